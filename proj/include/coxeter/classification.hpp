#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxeter/matrix.hpp"

namespace coxeter {

enum class TypeKind { Finite, Affine, Indefinite };

inline const char* to_string(TypeKind k) {
  switch (k) {
    case TypeKind::Finite: return "Finite";
    case TypeKind::Affine: return "Affine";
    case TypeKind::Indefinite: return "Indefinite";
  }
  return "?";
}

/// Finite(name), Affine(name) or Indefinite. Names are ASCII: "B3", "I2(5)",
/// affine types carry a tilde after the letter ("A~2", "G~2").
struct TypeLabel {
  TypeKind kind = TypeKind::Indefinite;
  std::string name;

  friend bool operator==(const TypeLabel&, const TypeLabel&) = default;
};

// ---------------------------------------------------------------------------
// Diagram tables

namespace diagram {

/// Builds a matrix from labelled edges on `n` vertices; all other pairs get 2.
inline CoxeterMatrix from_edges(int n, const std::vector<std::tuple<int, int, Order>>& edges) {
  std::vector<Order> e(static_cast<std::size_t>(n) * n, 2);
  for (int s = 0; s < n; ++s) e[static_cast<std::size_t>(s) * n + s] = 1;
  for (auto [s, t, m] : edges) {
    e[static_cast<std::size_t>(s) * n + t] = m;
    e[static_cast<std::size_t>(t) * n + s] = m;
  }
  return CoxeterMatrix::from_row_major(n, e);
}

/// Path 0-1-...-(k-1) with the given edge labels (size k-1).
inline std::vector<std::tuple<int, int, Order>> path_edges(const std::vector<Order>& labels) {
  std::vector<std::tuple<int, int, Order>> edges;
  for (std::size_t i = 0; i < labels.size(); ++i)
    edges.emplace_back(static_cast<int>(i), static_cast<int>(i) + 1, labels[i]);
  return edges;
}

inline CoxeterMatrix path(const std::vector<Order>& labels) {
  return from_edges(static_cast<int>(labels.size()) + 1, path_edges(labels));
}

/// Star with a centre and arms of the given lengths (in edges), all labels 3.
inline CoxeterMatrix star(const std::vector<int>& arms) {
  std::vector<std::tuple<int, int, Order>> edges;
  int next = 1;
  for (int len : arms) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      edges.emplace_back(prev, next, 3);
      prev = next++;
    }
  }
  return from_edges(next, edges);
}

struct Template {
  TypeLabel label;
  CoxeterMatrix matrix;
};

// Finite irreducible diagrams with `n` vertices, excluding rank 2 (handled by
// the I2(m) family directly).
inline std::vector<Template> finite_of_rank(int n) {
  std::vector<Template> out;
  auto add = [&](std::string name, CoxeterMatrix m) {
    out.push_back({{TypeKind::Finite, std::move(name)}, std::move(m)});
  };
  if (n == 1) {
    add("A1", from_edges(1, {}));
    return out;
  }
  if (n == 2) return out;
  const std::string idx = std::to_string(n);
  add("A" + idx, path(std::vector<Order>(n - 1, 3)));
  {
    std::vector<Order> labels(n - 1, 3);
    labels.back() = 4;
    add("B" + idx, path(labels));
  }
  if (n >= 4) {
    auto edges = path_edges(std::vector<Order>(n - 2, 3));
    edges.emplace_back(n - 3, n - 1, 3);
    add("D" + idx, from_edges(n, edges));
  }
  if (n >= 6 && n <= 8) add("E" + idx, star({2, 1, n - 4}));
  if (n == 4) add("F4", path({3, 4, 3}));
  if (n == 3) add("H3", path({5, 3}));
  if (n == 4) add("H4", path({5, 3, 3}));
  return out;
}

// Affine irreducible diagrams with `n` vertices (type index n-1), excluding
// rank 2 (A~1, handled directly).
inline std::vector<Template> affine_of_rank(int n) {
  std::vector<Template> out;
  auto add = [&](std::string name, CoxeterMatrix m) {
    out.push_back({{TypeKind::Affine, std::move(name)}, std::move(m)});
  };
  if (n < 3) return out;
  const int k = n - 1;
  const std::string idx = std::to_string(k);
  {
    auto edges = path_edges(std::vector<Order>(n - 1, 3));
    edges.emplace_back(n - 1, 0, 3);
    add("A~" + idx, from_edges(n, edges));
  }
  {
    std::vector<Order> labels(n - 1, 3);
    labels.front() = 4;
    labels.back() = 4;
    add("C~" + idx, path(labels));
  }
  if (k >= 3) {
    // 0 and 1 hang off 2, then the path 2..k ends in a 4.
    std::vector<std::tuple<int, int, Order>> edges{{0, 2, 3}, {1, 2, 3}};
    for (int v = 2; v < k; ++v) edges.emplace_back(v, v + 1, v + 1 == k ? 4 : 3);
    add("B~" + idx, from_edges(n, edges));
  }
  if (k >= 4) {
    std::vector<std::tuple<int, int, Order>> edges{{0, 2, 3}, {1, 2, 3}};
    for (int v = 2; v < k - 2; ++v) edges.emplace_back(v, v + 1, 3);
    edges.emplace_back(k - 1, k - 2, 3);
    edges.emplace_back(k, k - 2, 3);
    add("D~" + idx, from_edges(n, edges));
  }
  if (k == 6) add("E~6", star({2, 2, 2}));
  if (k == 7) add("E~7", star({1, 3, 3}));
  if (k == 8) add("E~8", star({1, 2, 5}));
  if (k == 4) add("F~4", path({3, 3, 4, 3}));
  if (k == 2) add("G~2", path({6, 3}));
  return out;
}

/// Every finite and affine irreducible diagram with at most `max_rank`
/// vertices. Rank 2 contributes I2(m) for 3 <= m <= `max_dihedral` and A~1.
inline std::vector<Template> all_up_to_rank(int max_rank, int max_dihedral = 12) {
  std::vector<Template> out;
  for (int n = 1; n <= max_rank; ++n) {
    if (n == 2) {
      for (int m = 3; m <= max_dihedral; ++m)
        out.push_back({{TypeKind::Finite, "I2(" + std::to_string(m) + ")"},
                       from_edges(2, {{0, 1, m}})});
      out.push_back({{TypeKind::Affine, "A~1"}, from_edges(2, {{0, 1, kInfinity}})});
      continue;
    }
    for (auto& t : finite_of_rank(n)) out.push_back(std::move(t));
    for (auto& t : affine_of_rank(n)) out.push_back(std::move(t));
  }
  return out;
}

// Sorted incident labels; a cheap isomorphism invariant for each vertex.
inline std::vector<Order> vertex_invariant(const CoxeterMatrix& m, int v) {
  std::vector<Order> labels;
  for (int t = 0; t < m.rank(); ++t)
    if (t != v && m(v, t) != 2) labels.push_back(m(v, t));
  std::sort(labels.begin(), labels.end());
  return labels;
}

/// Labelled-graph isomorphism test between two connected diagrams. Returns a
/// map pattern-vertex -> target-vertex when one exists.
inline std::optional<std::vector<int>> match(const CoxeterMatrix& pattern, const CoxeterMatrix& target) {
  const int n = pattern.rank();
  if (target.rank() != n) return std::nullopt;
  std::vector<std::vector<Order>> pinv(n), tinv(n);
  for (int v = 0; v < n; ++v) {
    pinv[v] = vertex_invariant(pattern, v);
    tinv[v] = vertex_invariant(target, v);
  }
  {
    auto a = pinv, b = tinv;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  // Visit pattern vertices in BFS order so each one after the first is
  // adjacent to an already-placed vertex.
  std::vector<int> order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (int t = 0; t < n; ++t)
      if (!seen[t] && pattern(order[h], t) != 2) {
        seen[t] = 1;
        order.push_back(t);
      }
  if (static_cast<int>(order.size()) != n) return std::nullopt;

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> place = [&](int depth) -> bool {
    if (depth == n) return true;
    const int p = order[depth];
    for (int c = 0; c < n; ++c) {
      if (used[c] || tinv[c] != pinv[p]) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int q = order[d];
        ok = target(c, image[q]) == pattern(p, q);
      }
      if (!ok) continue;
      image[p] = c;
      used[c] = 1;
      if (place(depth + 1)) return true;
      used[c] = 0;
      image[p] = -1;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return image;
}

}  // namespace diagram

// ---------------------------------------------------------------------------
// Component classification

struct ComponentClassification {
  GeneratorSet generators;
  TypeLabel type;
  Signature signature;

  friend bool operator==(const ComponentClassification&, const ComponentClassification&) = default;
};

/// Type by exact template lookup only.
inline TypeLabel match_template(const CoxeterMatrix& c) {
  const int n = c.rank();
  if (n == 2) {
    const Order m = c(0, 1);
    if (is_infinite(m)) return {TypeKind::Affine, "A~1"};
    return {TypeKind::Finite, "I2(" + std::to_string(m) + ")"};
  }
  for (const auto& t : diagram::finite_of_rank(n))
    if (diagram::match(t.matrix, c)) return t.label;
  for (const auto& t : diagram::affine_of_rank(n))
    if (diagram::match(t.matrix, c)) return t.label;
  return {TypeKind::Indefinite, ""};
}

inline bool signature_agrees(TypeKind kind, const Signature& sig, int n) {
  switch (kind) {
    case TypeKind::Finite: return sig == Signature{n, 0, 0};
    case TypeKind::Affine: return sig == Signature{n - 1, 1, 0};
    case TypeKind::Indefinite: return sig.n_minus >= 1;
  }
  return false;
}

/// Classifies a connected diagram. The template result is authoritative; the
/// Gram signature must agree with it or InternalDisagreement is thrown.
inline ComponentClassification classify_component(const IrreducibleComponent& c,
                                                  double tol = kEigenTolerance) {
  if (components(c.induced).size() != 1)
    throw Error(ErrorKind::DegenerateInput, "component diagram is not connected");
  ComponentClassification out;
  out.generators = c.generators;
  out.type = match_template(c.induced);
  out.signature = signature(gram(c.induced), tol);
  if (!signature_agrees(out.type.kind, out.signature, c.induced.rank())) {
    throw Error(ErrorKind::InternalDisagreement,
                std::string("template says ") + to_string(out.type.kind) + " " + out.type.name +
                    " but Gram signature is (" + std::to_string(out.signature.n_plus) + "," +
                    std::to_string(out.signature.n_zero) + "," +
                    std::to_string(out.signature.n_minus) + ")");
  }
  return out;
}

inline std::vector<ComponentClassification> classify(const CoxeterMatrix& m,
                                                     double tol = kEigenTolerance) {
  std::vector<ComponentClassification> out;
  for (const auto& c : components(m)) out.push_back(classify_component(c, tol));
  return out;
}

struct TildeS {
  GeneratorSet generators;                          // ascending
  std::vector<ComponentClassification> components;  // the infinite factors
};

/// Generators of the minimal finite-index parabolic subgroup: the union of
/// every irreducible component that is not of finite type.
inline TildeS tilde_S(const CoxeterMatrix& m, double tol = kEigenTolerance) {
  TildeS out;
  for (auto& c : classify(m, tol)) {
    if (c.type.kind == TypeKind::Finite) continue;
    out.generators.insert(out.generators.end(), c.generators.begin(), c.generators.end());
    out.components.push_back(std::move(c));
  }
  std::sort(out.generators.begin(), out.generators.end());
  return out;
}

}  // namespace coxeter
