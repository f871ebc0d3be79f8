#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxeter/error.hpp"

namespace coxeter {

/// Order of a product st. Infinity is encoded as 0, which is never a legal
/// finite order, both in memory and on the wire.
using Order = int;
inline constexpr Order kInfinity = 0;

inline bool is_infinite(Order m) noexcept { return m == kInfinity; }

inline std::string order_to_string(Order m) {
  return is_infinite(m) ? std::string("inf") : std::to_string(m);
}

using Generator = int;
using GeneratorSet = std::vector<Generator>;

/// Symmetric matrix m(s,t) of a Coxeter system (W,S). Instances are only
/// produced through validation, so every live value satisfies the invariants.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  /// Validates a square table. The input is never modified.
  static CoxeterMatrix validate(const std::vector<std::vector<Order>>& table) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorKind::NotSquare, "empty matrix");
    std::vector<Order> flat;
    flat.reserve(n * n);
    for (const auto& row : table) {
      if (row.size() != n) throw Error(ErrorKind::NotSquare, "row length differs from row count");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_row_major(static_cast<int>(n), flat);
  }

  static CoxeterMatrix from_row_major(int rank, std::span<const Order> entries) {
    if (rank <= 0 || entries.size() != static_cast<std::size_t>(rank) * rank)
      throw Error(ErrorKind::NotSquare, "expected " + std::to_string(rank) + "x" +
                                            std::to_string(rank) + " entries");
    CoxeterMatrix m;
    m.rank_ = rank;
    m.entries_.assign(entries.begin(), entries.end());
    for (int s = 0; s < rank; ++s) {
      if (m(s, s) != 1)
        throw Error(ErrorKind::BadDiagonal,
                    "m(" + std::to_string(s) + "," + std::to_string(s) + ") = " +
                        std::to_string(m(s, s)) + ", expected 1");
    }
    for (int s = 0; s < rank; ++s) {
      for (int t = s + 1; t < rank; ++t) {
        if (m(s, t) != m(t, s))
          throw Error(ErrorKind::NonSymmetric,
                      "m(" + std::to_string(s) + "," + std::to_string(t) + ") != m(" +
                          std::to_string(t) + "," + std::to_string(s) + ")");
        if (!is_infinite(m(s, t)) && m(s, t) < 2)
          throw Error(ErrorKind::BadOffDiagonal,
                      "m(" + std::to_string(s) + "," + std::to_string(t) + ") = " +
                          std::to_string(m(s, t)) + " (must be >= 2 or inf)");
      }
    }
    return m;
  }

  int rank() const noexcept { return rank_; }
  Order operator()(int s, int t) const { return entries_[static_cast<std::size_t>(s) * rank_ + t]; }
  std::span<const Order> row_major() const noexcept { return entries_; }

  std::vector<std::vector<Order>> table() const {
    std::vector<std::vector<Order>> out(rank_, std::vector<Order>(rank_));
    for (int s = 0; s < rank_; ++s)
      for (int t = 0; t < rank_; ++t) out[s][t] = (*this)(s, t);
    return out;
  }

  /// Coxeter matrix of the standard parabolic subsystem on `gens`, in the
  /// order given.
  CoxeterMatrix restrict_to(std::span<const Generator> gens) const {
    const int k = static_cast<int>(gens.size());
    std::vector<Order> sub(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[static_cast<std::size_t>(i) * k + j] = (*this)(gens[i], gens[j]);
    return from_row_major(k, sub);
  }

  /// Relabels generators: generator i of the result is generator perm[i] here.
  CoxeterMatrix permuted(std::span<const int> perm) const { return restrict_to(perm); }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int rank_ = 0;
  std::vector<Order> entries_;
};

/// Direct product: block-diagonal matrix with m = 2 between the blocks.
inline CoxeterMatrix direct_product(const CoxeterMatrix& a, const CoxeterMatrix& b) {
  const int n = a.rank() + b.rank();
  std::vector<Order> e(static_cast<std::size_t>(n) * n, 2);
  for (int s = 0; s < n; ++s) e[static_cast<std::size_t>(s) * n + s] = 1;
  for (int s = 0; s < a.rank(); ++s)
    for (int t = 0; t < a.rank(); ++t) e[static_cast<std::size_t>(s) * n + t] = a(s, t);
  for (int s = 0; s < b.rank(); ++s)
    for (int t = 0; t < b.rank(); ++t)
      e[static_cast<std::size_t>(s + a.rank()) * n + t + a.rank()] = b(s, t);
  return CoxeterMatrix::from_row_major(n, e);
}

// ---------------------------------------------------------------------------
// Irreducible decomposition

struct IrreducibleComponent {
  GeneratorSet generators;  // ascending
  CoxeterMatrix induced;

  friend bool operator==(const IrreducibleComponent&, const IrreducibleComponent&) = default;
};

/// Connected components of the Coxeter diagram (edge {s,t} iff m(s,t) != 2),
/// ordered by least generator.
inline std::vector<IrreducibleComponent> components(const CoxeterMatrix& m) {
  const int n = m.rank();
  std::vector<int> label(n, -1);
  std::vector<IrreducibleComponent> out;
  for (int root = 0; root < n; ++root) {
    if (label[root] >= 0) continue;
    const int id = static_cast<int>(out.size());
    GeneratorSet members{root};
    label[root] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const int s = members[head];
      for (int t = 0; t < n; ++t) {
        if (label[t] < 0 && t != s && m(s, t) != 2) {
          label[t] = id;
          members.push_back(t);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back({members, m.restrict_to(members)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cosine (Gram) matrix and its signature

using GramMatrix = Eigen::MatrixXd;

/// B(s,t) = -cos(pi / m(s,t)), with B(s,t) = -1 when m(s,t) is infinite.
inline GramMatrix gram(const CoxeterMatrix& m) {
  const int n = m.rank();
  GramMatrix b(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const Order mst = m(s, t);
      if (s == t) b(s, t) = 1.0;
      else if (is_infinite(mst)) b(s, t) = -1.0;
      else if (mst == 2) b(s, t) = 0.0;
      else b(s, t) = -std::cos(std::numbers::pi / mst);
    }
  }
  return b;
}

struct Signature {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline constexpr double kEigenTolerance = 1e-9;

inline Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Eigenvalue sign counts; |lambda| <= tol counts as zero.
inline Signature signature(const GramMatrix& b, double tol = kEigenTolerance) {
  Signature sig;
  const Eigen::VectorXd ev = symmetric_eigenvalues(b);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > tol) ++sig.n_plus;
    else if (ev[i] < -tol) ++sig.n_minus;
    else ++sig.n_zero;
  }
  return sig;
}

}  // namespace coxeter
