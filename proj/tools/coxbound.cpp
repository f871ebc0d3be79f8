// coxbound: command-line front end for the coxeter library.
//
// Exit codes: 0 success, 2 invalid input, 3 search found nothing,
// 4 numeric ambiguity, 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coxeter/coxeter.hpp"

using namespace coxeter;
using namespace coxeter::boundary;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitNumeric = 4;

struct SystemOptions {
  std::string matrix;
  std::string triangle;
  std::string type;
  std::string graph;
  std::string input;
};

struct Outputs {
  std::string report;
  std::string svg;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

Order parse_order(const std::string& s) {
  if (s == "inf" || s == "oo" || s == "0") return kInfinity;
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad order '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

/// Inline tables are nested JSON arrays; 0 or "inf" means infinity.
io::SystemSpec inline_matrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (doc.is_object()) return io::spec_from_json(doc);
  if (!doc.is_array()) throw Error(ErrorKind::ParseError, "--matrix expects a nested array");
  io::RawMatrix raw;
  for (const auto& row : doc) {
    if (!row.is_array()) throw Error(ErrorKind::ParseError, "--matrix rows must be arrays");
    std::vector<Order> r;
    for (const auto& v : row) {
      if (v.is_string()) r.push_back(parse_order(v.get<std::string>()));
      else if (v.is_number_integer()) r.push_back(v.get<int>());
      else throw Error(ErrorKind::ParseError, "--matrix entries must be integers or \"inf\"");
    }
    raw.table.push_back(std::move(r));
  }
  return raw;
}

io::SystemSpec system_spec(const SystemOptions& o) {
  const int given = !o.matrix.empty() + !o.triangle.empty() + !o.type.empty() + !o.graph.empty() +
                    !o.input.empty();
  if (given != 1)
    throw Error(ErrorKind::ParseError,
                "give exactly one of --matrix, --triangle, --type, --graph, --input");
  if (!o.input.empty()) return io::parse_spec(read_file(o.input));
  if (!o.matrix.empty()) return inline_matrix(o.matrix);
  if (!o.type.empty()) return io::NamedType{o.type};
  if (!o.triangle.empty()) {
    const auto parts = split(o.triangle, ',');
    if (parts.size() != 3) throw Error(ErrorKind::ParseError, "--triangle expects p,q,r");
    return io::Triangle{parse_order(parts[0]), parse_order(parts[1]), parse_order(parts[2])};
  }
  // n:a-b,c-d
  const auto colon = o.graph.find(':');
  io::RightAngledGraph g;
  try {
    g.vertices = std::stoi(o.graph.substr(0, colon));
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "--graph expects n:a-b,c-d");
  }
  if (colon != std::string::npos)
    for (const auto& e : split(o.graph.substr(colon + 1), ',')) {
      if (e.empty()) continue;
      const auto ab = split(e, '-');
      if (ab.size() != 2) throw Error(ErrorKind::ParseError, "bad edge '" + e + "'");
      g.edges.emplace_back(std::stoi(ab[0]), std::stoi(ab[1]));
    }
  return g;
}

Word parse_word(const std::string& s) {
  Word w;
  if (s.empty() || s == "e") return w;
  for (const auto& tok : split(s, ',')) {
    try {
      w.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad word letter '" + tok + "'");
    }
  }
  return w;
}

Arc parse_arc(const std::string& s, bool closed) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw Error(ErrorKind::ParseError, "arc expects start:end");
  try {
    return Arc::between(std::stod(parts[0]), std::stod(parts[1]), closed);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "bad arc '" + s + "'");
  }
}

void add_system_options(CLI::App* cmd, SystemOptions& o) {
  cmd->add_option("--matrix", o.matrix, "Coxeter matrix as nested JSON array (0 or \"inf\" = infinity)");
  cmd->add_option("--triangle", o.triangle, "triangle group p,q,r");
  cmd->add_option("--type", o.type, "named type, e.g. B3, A~2, I2(5), A~1xA~1");
  cmd->add_option("--graph", o.graph, "right-angled system of a graph, n:a-b,c-d (edge = commuting)");
  cmd->add_option("--input", o.input, "system document (JSON)");
}

void add_outputs(CLI::App* cmd, Outputs& out, bool svg) {
  cmd->add_option("--report", out.report, "write the JSON report here");
  if (svg) cmd->add_option("--svg", out.svg, "write an SVG rendering here");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

io::Report make_report(io::ReportKind kind, const io::SystemSpec& spec, const CoxeterMatrix& m) {
  io::Report r;
  r.kind = kind;
  r.inputs["system"] = io::spec_to_json(spec);
  r.inputs["matrix"] = io::matrix_to_json(m);
  r.tolerances["eigen"] = kEigenTolerance;
  r.tolerances["root_sign"] = kRootSignTolerance;
  return r;
}

void finish(const io::Report& r, const Outputs& out) {
  if (!out.report.empty()) write_file(out.report, io::serialize(r));
}

// First hyperbolic element of the ball, in ShortLex order.
std::optional<GroupElement> first_hyperbolic(const HyperbolicRealization& real, const Ball& b) {
  for (const auto& g : b.elements)
    if (is_hyperbolic(real.in_frame(g))) return g;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-one decisions and boundary dynamics for Coxeter groups"};
  app.require_subcommand(1);

  SystemOptions sys;
  Outputs out;
  int radius = 12;
  std::string word_text, f_text, u_text, v_text;
  double alpha = 0.0, beta = 1.0;
  bool list = false;
  NorthSouthOptions ns;

  auto* classify_cmd = app.add_subcommand("classify", "irreducible components and their types");
  auto* decide_cmd = app.add_subcommand("decide", "decide whether W contains a rank-one isometry");
  auto* nf_cmd = app.add_subcommand("nf", "ShortLex normal form of a word");
  auto* ball_cmd = app.add_subcommand("ball", "enumerate the ball of a given radius");
  auto* limit_cmd = app.add_subcommand("limitset", "sample the limit set (rank-3 hyperbolic only)");
  auto* ns_cmd = app.add_subcommand("northsouth", "check north-south dynamics of a hyperbolic element");
  auto* fractal_cmd = app.add_subcommand("fractal-search", "find g with g F inside U");
  auto* dual_cmd = app.add_subcommand("dual-pair", "find g with g(circle-U) in V and g^-1(circle-V) in U");
  auto* min_cmd = app.add_subcommand("minimality", "largest gap of an orbit");
  auto* scr_cmd = app.add_subcommand("scrambled", "extremes of d(g alpha, g beta) over a ball");

  for (auto* cmd : {classify_cmd, decide_cmd, nf_cmd, ball_cmd, limit_cmd, ns_cmd, fractal_cmd, dual_cmd,
                    min_cmd, scr_cmd}) {
    add_system_options(cmd, sys);
    add_outputs(cmd, out, cmd == limit_cmd || cmd == min_cmd);
  }
  nf_cmd->add_option("--word", word_text, "comma-separated generator indices")->required();
  ball_cmd->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  ball_cmd->add_flag("--list", list, "print every normal form");
  limit_cmd->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  ns_cmd->add_option("--word", word_text, "element (default: ShortLex-first hyperbolic element)");
  ns_cmd->add_option("--radius", radius, "search radius for the default element")->check(CLI::NonNegativeNumber);
  ns_cmd->add_option("--samples", ns.n_samples)->check(CLI::PositiveNumber);
  ns_cmd->add_option("--iterations", ns.n_iter)->check(CLI::NonNegativeNumber);
  ns_cmd->add_option("--tol", ns.tol)->check(CLI::PositiveNumber);
  ns_cmd->add_option("--exclusion", ns.exclusion)->check(CLI::NonNegativeNumber);
  fractal_cmd->add_option("--F", f_text, "closed arc start:end (radians, ccw)")->required();
  fractal_cmd->add_option("--U", u_text, "open arc start:end (radians, ccw)")->required();
  fractal_cmd->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  dual_cmd->add_option("--U", u_text, "open arc start:end")->required();
  dual_cmd->add_option("--V", v_text, "open arc start:end")->required();
  dual_cmd->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  min_cmd->add_option("--alpha", alpha);
  min_cmd->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  scr_cmd->add_option("--alpha", alpha);
  scr_cmd->add_option("--beta", beta);
  scr_cmd->add_option("--radius", radius)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    const io::SystemSpec spec = system_spec(sys);
    const CoxeterMatrix m = io::to_matrix(spec);

    if (*classify_cmd) {
      auto r = make_report(io::ReportKind::Classification, spec, m);
      json comps = json::array();
      for (const auto& c : classify(m)) {
        comps.push_back(io::classification_to_json(c));
        std::cout << "{" << word_to_string(c.generators) << "}: " << to_string(c.type.kind)
                  << (c.type.name.empty() ? "" : " " + c.type.name) << "  signature ("
                  << c.signature.n_plus << "," << c.signature.n_zero << "," << c.signature.n_minus << ")\n";
      }
      r.outputs["components"] = comps;
      finish(r, out);
      return kExitOk;
    }

    if (*decide_cmd) {
      auto r = make_report(io::ReportKind::Verdict, spec, m);
      const auto v = decide_rank_one(m);
      r.outputs = io::verdict_to_json(v);
      std::cout << "verdict: " << to_string(v.verdict) << "\n" << v.narrative << "\n";
      for (const auto& c : v.conditions)
        std::cout << "  (" << c.index << ") " << to_string(c.truth) << "  " << c.statement << "\n";
      finish(r, out);
      return kExitOk;
    }

    const ReflectionRep rep(m);

    if (*nf_cmd) {
      auto r = make_report(io::ReportKind::NormalForm, spec, m);
      const Word w = parse_word(word_text);
      const auto g = normal_form(w, rep);
      r.inputs["word"] = w;
      r.outputs = io::element_to_json(g);
      std::cout << "normal form: " << word_to_string(g.normal_form) << "\nlength: " << g.length() << "\n";
      finish(r, out);
      return kExitOk;
    }

    if (*ball_cmd) {
      auto r = make_report(io::ReportKind::Ball, spec, m);
      const auto b = ball(rep, radius);
      r.inputs["radius"] = radius;
      std::vector<std::size_t> spheres;
      for (int k = 0; k <= radius; ++k) spheres.push_back(b.level_start[k + 1] - b.level_start[k]);
      r.outputs["size"] = b.size();
      r.outputs["sphere_sizes"] = spheres;
      std::cout << "ball of radius " << radius << ": " << b.size() << " elements\n";
      for (int k = 0; k <= radius; ++k) std::cout << "  length " << k << ": " << spheres[k] << "\n";
      if (list) {
        json words = json::array();
        for (const auto& g : b.elements) {
          words.push_back(g.normal_form);
          std::cout << word_to_string(g.normal_form) << "\n";
        }
        r.outputs["elements"] = words;
      }
      finish(r, out);
      return kExitOk;
    }

    // Everything below acts on the circle boundary.
    const auto real = realize(m);

    if (*limit_cmd) {
      auto r = make_report(io::ReportKind::Density, spec, m);
      const auto b = ball(real.rep(), radius);
      const auto pts = limit_set_sample(real, b, radius);
      r.inputs["radius"] = radius;
      r.tolerances["dedup"] = kDedupTolerance;
      r.outputs["count"] = pts.size();
      r.outputs["max_gap"] = max_gap(pts);
      r.outputs["points"] = io::points_to_json(pts);
      std::cout << "limit points: " << pts.size() << "\nmax gap: " << fmt(max_gap(pts)) << " rad\n";
      if (!out.svg.empty()) write_file(out.svg, io::render_limit_set(pts));
      finish(r, out);
      return kExitOk;
    }

    if (*ns_cmd) {
      auto r = make_report(io::ReportKind::NorthSouth, spec, m);
      GroupElement g;
      if (!word_text.empty()) {
        g = normal_form(parse_word(word_text), real.rep());
      } else {
        auto found = first_hyperbolic(real, ball(real.rep(), radius));
        if (!found) {
          std::cout << "no hyperbolic element within radius " << radius << "\n";
          return kExitNotFound;
        }
        g = *found;
      }
      const Mat3 mat = real.in_frame(g);
      if (!is_hyperbolic(mat)) throw Error(ErrorKind::DegenerateInput, "element is not hyperbolic");
      const auto rep_ns = verify_north_south(mat, ns);
      r.inputs["element"] = g.normal_form;
      r.inputs["samples"] = ns.n_samples;
      r.inputs["iterations"] = ns.n_iter;
      r.tolerances["convergence"] = ns.tol;
      r.tolerances["exclusion"] = ns.exclusion;
      r.outputs = json{{"attracting", rep_ns.attracting.theta},
                       {"repelling", rep_ns.repelling.theta},
                       {"translation_length", std::log(spectral_radius(mat))},
                       {"excluded", rep_ns.n_excluded},
                       {"converged", rep_ns.n_converged},
                       {"fraction_converged", rep_ns.fraction_converged}};
      std::cout << "element: " << word_to_string(g.normal_form) << "\nattracting: " << fmt(rep_ns.attracting.theta)
                << "\nrepelling: " << fmt(rep_ns.repelling.theta)
                << "\nfraction converged: " << fmt(rep_ns.fraction_converged) << "\n";
      finish(r, out);
      return kExitOk;
    }

    if (*fractal_cmd || *dual_cmd) {
      const bool dual = dual_cmd->parsed();
      auto r = make_report(dual ? io::ReportKind::DualPair : io::ReportKind::Contraction, spec, m);
      const auto b = ball(real.rep(), radius);
      std::optional<GroupElement> g;
      if (dual) {
        const Arc u = parse_arc(u_text, false), v = parse_arc(v_text, false);
        r.inputs["U"] = io::arc_to_json(u);
        r.inputs["V"] = io::arc_to_json(v);
        g = find_dual_pair(real, b, u, v, radius);
      } else {
        const Arc f = parse_arc(f_text, true), u = parse_arc(u_text, false);
        r.inputs["F"] = io::arc_to_json(f);
        r.inputs["U"] = io::arc_to_json(u);
        g = find_contraction(real, b, f, u, radius);
      }
      r.inputs["radius"] = radius;
      r.outputs["found"] = g.has_value();
      if (g) r.outputs["witness"] = io::element_to_json(*g);
      finish(r, out);
      if (!g) {
        std::cout << "not found within radius " << radius << "\n";
        return kExitNotFound;
      }
      std::cout << "witness: " << word_to_string(g->normal_form) << " (length " << g->length() << ")\n";
      return kExitOk;
    }

    if (*min_cmd) {
      auto r = make_report(io::ReportKind::Minimality, spec, m);
      const auto b = ball(real.rep(), radius);
      const auto pts = orbit(real, b, BoundaryPoint(alpha), radius);
      const double gap = max_gap(pts);
      r.inputs["alpha"] = BoundaryPoint(alpha).theta;
      r.inputs["radius"] = radius;
      r.outputs["orbit_size"] = pts.size();
      r.outputs["max_gap"] = gap;
      std::cout << "orbit size: " << pts.size() << "\nmax gap: " << fmt(gap) << " rad\n";
      if (!out.svg.empty()) {
        const std::vector<io::Overlay> overlay{{"orbit", "#c0392b", pts}};
        write_file(out.svg, io::render_limit_set({}, overlay));
      }
      finish(r, out);
      return kExitOk;
    }

    if (*scr_cmd) {
      auto r = make_report(io::ReportKind::Scrambled, spec, m);
      const auto s = scrambled_stats(real, ball(real.rep(), radius), BoundaryPoint(alpha), BoundaryPoint(beta), radius);
      r.inputs["alpha"] = BoundaryPoint(alpha).theta;
      r.inputs["beta"] = BoundaryPoint(beta).theta;
      r.inputs["radius"] = radius;
      r.outputs["max_d"] = s.max_d;
      r.outputs["min_d"] = s.min_d;
      std::cout << "max d: " << fmt(s.max_d) << "\nmin d: " << fmt(s.min_d) << "\n";
      finish(r, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::NumericAmbiguity) return kExitNumeric;
    if (e.is_validation()) return kExitInvalid;
    return 1;
  }
  return 1;
}
