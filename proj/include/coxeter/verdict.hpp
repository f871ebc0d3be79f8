#pragma once

#include <array>
#include <string>
#include <vector>

#include "coxeter/classification.hpp"

namespace coxeter {

enum class Verdict { RankOne, Finite, Elementary, AffineObstruction, ProductObstruction };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::RankOne: return "RankOne";
    case Verdict::Finite: return "Finite";
    case Verdict::Elementary: return "Elementary";
    case Verdict::AffineObstruction: return "AffineObstruction";
    case Verdict::ProductObstruction: return "ProductObstruction";
  }
  return "?";
}

enum class Truth { Holds, Fails, NotApplicable };

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::Holds: return "holds";
    case Truth::Fails: return "fails";
    case Truth::NotApplicable: return "n/a";
  }
  return "?";
}

/// How a condition's truth value was obtained.
enum class Basis { Decided, Equivalence, EquivalenceEmpirical };

inline const char* to_string(Basis b) {
  switch (b) {
    case Basis::Decided: return "decided from the Coxeter matrix";
    case Basis::Equivalence: return "implied by equivalence";
    case Basis::EquivalenceEmpirical:
      return "implied by equivalence; checked numerically for rank-3 hyperbolic systems";
  }
  return "?";
}

struct ConditionStatus {
  int index = 0;  // 1..12
  std::string statement;
  Truth truth = Truth::NotApplicable;
  Basis basis = Basis::Equivalence;
};

struct RankOneVerdict {
  Verdict verdict = Verdict::Finite;
  GeneratorSet tilde_S;
  std::vector<ComponentClassification> components;  // every irreducible component
  std::vector<ConditionStatus> conditions;          // the twelve equivalent conditions
  std::string narrative;
};

namespace detail {

inline const std::array<std::pair<const char*, Basis>, 12>& condition_table() {
  static const std::array<std::pair<const char*, Basis>, 12> table{{
      {"(W_S~, S~) is irreducible and non-affine", Basis::Decided},
      {"W contains a rank-one isometry of the Davis complex", Basis::Equivalence},
      {"W contains a rank-one isometry of X", Basis::Equivalence},
      {"the boundary of the Davis complex has a topological fractal structure",
       Basis::EquivalenceEmpirical},
      {"the boundary of the Davis complex is minimal", Basis::EquivalenceEmpirical},
      {"the boundary of the Davis complex is scrambled", Basis::EquivalenceEmpirical},
      {"the boundary of X has a topological fractal structure", Basis::EquivalenceEmpirical},
      {"the boundary of X is minimal", Basis::EquivalenceEmpirical},
      {"the boundary of X is scrambled", Basis::EquivalenceEmpirical},
      {"the Davis complex has no quasi-dense product of two unbounded subspaces",
       Basis::Equivalence},
      {"X has no quasi-dense product of two unbounded subspaces", Basis::Equivalence},
      {"W has no finite-index subgroup splitting as a product of two infinite subgroups",
       Basis::Decided},
  }};
  return table;
}

inline std::string join_names(const std::vector<ComponentClassification>& cs) {
  std::string out;
  for (const auto& c : cs) {
    if (!out.empty()) out += " x ";
    out += c.type.kind == TypeKind::Indefinite ? std::string("Indefinite") : c.type.name;
  }
  return out;
}

}  // namespace detail

/// Decides whether W contains a rank-one isometry from its Coxeter matrix.
inline RankOneVerdict decide_rank_one(const CoxeterMatrix& m, double tol = kEigenTolerance) {
  RankOneVerdict out;
  out.components = classify(m, tol);
  std::vector<ComponentClassification> infinite;
  for (const auto& c : out.components) {
    if (c.type.kind == TypeKind::Finite) continue;
    infinite.push_back(c);
    out.tilde_S.insert(out.tilde_S.end(), c.generators.begin(), c.generators.end());
  }
  std::sort(out.tilde_S.begin(), out.tilde_S.end());

  Truth truth = Truth::NotApplicable;
  if (infinite.empty()) {
    out.verdict = Verdict::Finite;
    out.narrative = "W is finite (every irreducible component is of finite type: " +
                    detail::join_names(out.components) +
                    "); the equivalence requires W infinite, so no condition applies.";
  } else if (infinite.size() >= 2) {
    out.verdict = Verdict::ProductObstruction;
    truth = Truth::Fails;
    out.narrative = "W_S~ = " + detail::join_names(infinite) +
                    " has " + std::to_string(infinite.size()) +
                    " infinite factors, so W_S~ is a finite-index subgroup splitting as a product "
                    "of two infinite subgroups: condition (12) fails, hence all twelve fail.";
  } else if (infinite.front().type.kind == TypeKind::Indefinite) {
    out.verdict = Verdict::RankOne;
    truth = Truth::Holds;
    out.narrative = "W_S~ is a single irreducible non-affine (indefinite) component: condition (1) "
                    "holds, hence all twelve hold and W contains a rank-one isometry.";
  } else if (infinite.front().type.name == "A~1") {
    out.verdict = Verdict::Elementary;
    out.narrative = "W_S~ is a single A~1 (infinite dihedral) component: W is 2-ended, i.e. "
                    "elementary, so the equivalence does not apply.";
  } else {
    out.verdict = Verdict::AffineObstruction;
    truth = Truth::Fails;
    out.narrative = "W_S~ is the irreducible affine group " + infinite.front().type.name +
                    ", which is virtually Z^" +
                    std::to_string(static_cast<int>(infinite.front().generators.size()) - 1) +
                    ": condition (1) fails (affine) and (12) fails, hence all twelve fail.";
  }

  const auto& table = detail::condition_table();
  for (int i = 0; i < 12; ++i)
    out.conditions.push_back({i + 1, table[i].first, truth, table[i].second});
  return out;
}

}  // namespace coxeter
