#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxeter/classification.hpp"

namespace coxeter::io {

using nlohmann::json;

struct RawMatrix {
  std::vector<std::vector<Order>> table;
  friend bool operator==(const RawMatrix&, const RawMatrix&) = default;
};

/// Triangle group (p, q, r): p between generators 0,1; q between 1,2; r between 0,2.
struct Triangle {
  Order p = 2, q = 3, r = 7;
  friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Right-angled system of a graph: edge means commuting (m = 2), non-edge m = inf.
struct RightAngledGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  friend bool operator==(const RightAngledGraph&, const RightAngledGraph&) = default;
};

/// Named irreducible type ("B3", "A~2", "I2(5)"), or a product joined by 'x'.
struct NamedType {
  std::string name;
  friend bool operator==(const NamedType&, const NamedType&) = default;
};

using SystemSpec = std::variant<RawMatrix, Triangle, RightAngledGraph, NamedType>;

// ---------------------------------------------------------------------------
// Constructors

inline CoxeterMatrix triangle(Order p, Order q, Order r) {
  for (Order m : {p, q, r})
    if (!is_infinite(m) && m < 2)
      throw Error(ErrorKind::BadOffDiagonal, "triangle entries must be >= 2 or inf");
  return CoxeterMatrix::validate({{1, p, r}, {p, 1, q}, {r, q, 1}});
}

inline CoxeterMatrix right_angled(const RightAngledGraph& g) {
  if (g.vertices <= 0) throw Error(ErrorKind::ParseError, "graph needs at least one vertex");
  std::vector<std::vector<Order>> t(g.vertices, std::vector<Order>(g.vertices, kInfinity));
  for (int v = 0; v < g.vertices; ++v) t[v][v] = 1;
  for (auto [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.vertices || b >= g.vertices || a == b)
      throw Error(ErrorKind::ParseError, "bad edge " + std::to_string(a) + "-" + std::to_string(b));
    t[a][b] = t[b][a] = 2;
  }
  return CoxeterMatrix::validate(t);
}

namespace detail {

inline std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

inline CoxeterMatrix named_irreducible(const std::string& raw) {
  const std::string name = trim(raw);
  auto fail = [&]() -> CoxeterMatrix { throw Error(ErrorKind::ParseError, "unknown type '" + name + "'"); };
  if (name.empty()) return fail();
  // I2(m)
  if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
    const std::string arg = name.substr(3, name.size() - 4);
    if (arg != "inf" && (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos))
      return fail();
    const Order m = (arg == "inf") ? kInfinity : std::stoi(arg);
    return CoxeterMatrix::validate({{1, m}, {m, 1}});
  }
  const char family = name[0];
  const bool affine = name.size() > 1 && name[1] == '~';
  const std::string digits = name.substr(affine ? 2 : 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return fail();
  const int index = std::stoi(digits);
  const int rank = affine ? index + 1 : index;
  if (rank < 1 || rank > 64) return fail();
  const std::string canonical = std::string(1, family) + (affine ? "~" : "") + digits;

  if (!affine) {
    // Rank-2 spellings of the dihedral groups.
    if (canonical == "A2") return named_irreducible("I2(3)");
    if (canonical == "B2" || canonical == "C2") return named_irreducible("I2(4)");
    if (canonical == "G2") return named_irreducible("I2(6)");
    if (family == 'C' && rank >= 3) return named_irreducible("B" + digits);
    for (const auto& t : diagram::finite_of_rank(rank))
      if (t.label.name == canonical) return t.matrix;
  } else {
    if (canonical == "A~1") return named_irreducible("I2(inf)");
    if (canonical == "B~2") return named_irreducible("C~2");
    for (const auto& t : diagram::affine_of_rank(rank))
      if (t.label.name == canonical) return t.matrix;
  }
  return fail();
}

}  // namespace detail

/// Resolves a named type; products are written "A~1 x A~1".
inline CoxeterMatrix named(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : name) {
    if (c == 'x' || c == '*') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  CoxeterMatrix out = detail::named_irreducible(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = direct_product(out, detail::named_irreducible(parts[i]));
  return out;
}

inline CoxeterMatrix to_matrix(const SystemSpec& spec) {
  return std::visit(
      [](const auto& s) -> CoxeterMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RawMatrix>) return CoxeterMatrix::validate(s.table);
        else if constexpr (std::is_same_v<T, Triangle>) return triangle(s.p, s.q, s.r);
        else if constexpr (std::is_same_v<T, RightAngledGraph>) return right_angled(s);
        else return named(s.name);
      },
      spec);
}

// ---------------------------------------------------------------------------
// Wire format. Infinity is written as 0.

inline json matrix_to_json(const CoxeterMatrix& m) {
  return json{{"rank", m.rank()},
              {"m", std::vector<Order>(m.row_major().begin(), m.row_major().end())}};
}

inline json spec_to_json(const SystemSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RawMatrix>) {
          json flat = json::array();
          for (const auto& row : s.table)
            for (Order v : row) flat.push_back(v);
          return json{{"rank", s.table.size()}, {"m", flat}};
        } else if constexpr (std::is_same_v<T, Triangle>) {
          return json{{"triangle", {s.p, s.q, s.r}}};
        } else if constexpr (std::is_same_v<T, RightAngledGraph>) {
          json edges = json::array();
          for (auto [a, b] : s.edges) edges.push_back({a, b});
          return json{{"right_angled", {{"vertices", s.vertices}, {"edges", edges}}}};
        } else {
          return json{{"type", s.name}};
        }
      },
      spec);
}

inline SystemSpec spec_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "system document must be an object");
    if (doc.contains("m")) {
      const int rank = doc.at("rank").get<int>();
      const auto flat = doc.at("m").get<std::vector<Order>>();
      if (rank <= 0 || flat.size() != static_cast<std::size_t>(rank) * rank)
        throw Error(ErrorKind::NotSquare, "\"m\" must hold rank*rank entries");
      RawMatrix raw;
      for (int s = 0; s < rank; ++s)
        raw.table.emplace_back(flat.begin() + s * rank, flat.begin() + (s + 1) * rank);
      return raw;
    }
    if (doc.contains("triangle")) {
      const auto v = doc.at("triangle").get<std::vector<Order>>();
      if (v.size() != 3) throw Error(ErrorKind::ParseError, "\"triangle\" needs three entries");
      return Triangle{v[0], v[1], v[2]};
    }
    if (doc.contains("right_angled")) {
      const auto& g = doc.at("right_angled");
      RightAngledGraph out;
      out.vertices = g.at("vertices").get<int>();
      for (const auto& e : g.at("edges")) out.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      return out;
    }
    if (doc.contains("type")) return NamedType{doc.at("type").get<std::string>()};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  throw Error(ErrorKind::ParseError, "expected one of \"m\", \"triangle\", \"right_angled\", \"type\"");
}

inline SystemSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return spec_from_json(doc);
}

/// Document text straight to a validated matrix.
inline CoxeterMatrix parse_matrix(const std::string& text) { return to_matrix(parse_spec(text)); }

}  // namespace coxeter::io
