#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "coxeter/matrix.hpp"

namespace coxeter {

/// Sequence of generator indices; the empty word is the identity.
using Word = std::vector<Generator>;

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

inline Word inverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

/// ShortLex comparison: shorter first, then lexicographic by generator index.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

using Matrix = Eigen::MatrixXd;
/// Extended precision used by the descent loop, where rounding error is
/// amplified by the condition number of the element.
using WideMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kRootSignTolerance = 1e-7;
inline constexpr int kRenormalizeEvery = 32;

/// Geometric representation: sigma_s(v) = v - 2 B(alpha_s, v) alpha_s with the
/// simple roots as the standard basis.
class ReflectionRep {
 public:
  ReflectionRep() = default;

  explicit ReflectionRep(CoxeterMatrix m, double sign_tol = kRootSignTolerance)
      : matrix_(std::move(m)), form_(gram(matrix_)), sign_tol_(sign_tol) {
    const int n = matrix_.rank();
    reflections_.reserve(n);
    for (int s = 0; s < n; ++s) {
      Matrix sigma = Matrix::Identity(n, n);
      for (int t = 0; t < n; ++t) sigma(s, t) -= 2.0 * form_(s, t);
      reflections_.push_back(std::move(sigma));
    }
    wide_form_ = WideMatrix(n, n);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) wide_form_(s, t) = wide_cosine(matrix_(s, t), s == t);
    const double det = form_.determinant();
    if (std::abs(det) > 1e-9) form_inverse_ = form_.inverse();
  }

  int rank() const noexcept { return matrix_.rank(); }
  const CoxeterMatrix& coxeter_matrix() const noexcept { return matrix_; }
  const GramMatrix& form() const noexcept { return form_; }
  const Matrix& reflection(Generator s) const { return reflections_.at(s); }
  double sign_tolerance() const noexcept { return sign_tol_; }
  bool nondegenerate() const noexcept { return form_inverse_.has_value(); }

  void check_word(const Word& w) const {
    for (Generator s : w)
      if (s < 0 || s >= rank())
        throw Error(ErrorKind::ParseError,
                    "generator index " + std::to_string(s) + " out of range [0," +
                        std::to_string(rank()) + ")");
  }

  /// Product of the reflections of `w`, left to right.
  Matrix matrix_of(const Word& w) const { return wide_matrix_of(w).cast<double>(); }

  WideMatrix wide_matrix_of(const Word& w) const {
    check_word(w);
    WideMatrix m = WideMatrix::Identity(rank(), rank());
    for (Generator s : w) right_multiply(m, s);
    return m;
  }

  /// m <- m * sigma_s, touching only what sigma_s changes.
  template <typename Derived>
  void right_multiply(Eigen::MatrixBase<Derived>& m, Generator s) const {
    using Scalar = typename Derived::Scalar;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col = m.col(s);
    for (int t = 0; t < rank(); ++t) {
      if (t == s) continue;
      const Scalar b = scalar_form<Scalar>(s, t);
      if (b != Scalar(0)) m.col(t) -= Scalar(2) * b * col;
    }
    m.col(s) = -col;
  }

  /// m <- sigma_s * m. Only row s changes:
  /// row_s = -m_s - 2 sum_{t != s} B(s,t) m_t.
  template <typename Derived>
  void left_multiply(Eigen::MatrixBase<Derived>& m, Generator s) const {
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row = -m.row(s);
    for (int t = 0; t < rank(); ++t) {
      const Scalar b = scalar_form<Scalar>(s, t);
      if (t != s && b != Scalar(0)) row -= Scalar(2) * b * m.row(t);
    }
    m.row(s) = row;
  }

  template <typename Scalar>
  Scalar scalar_form(int s, int t) const {
    if constexpr (std::is_same_v<Scalar, long double>) return wide_form_(s, t);
    else return static_cast<Scalar>(form_(s, t));
  }

  /// One Newton-Schulz step pulling `m` back onto the group preserving B.
  /// No-op when B is degenerate.
  void renormalize(Matrix& m) const {
    if (!form_inverse_) return;
    const int n = rank();
    const Matrix defect = (*form_inverse_) * m.transpose() * form_ * m;
    m = m * (3.0 * Matrix::Identity(n, n) - defect) * 0.5;
  }

  /// max |M^T B M - B| entry, evaluated in extended precision.
  double form_drift(const Matrix& m) const {
    const WideMatrix w = m.cast<long double>();
    return static_cast<double>((w.transpose() * wide_form_ * w - wide_form_).cwiseAbs().maxCoeff());
  }

 private:
  CoxeterMatrix matrix_;
  static long double wide_cosine(Order m, bool diagonal) {
    if (diagonal) return 1.0L;
    if (is_infinite(m)) return -1.0L;
    if (m == 2) return 0.0L;
    return -std::cos(std::numbers::pi_v<long double> / m);
  }

  GramMatrix form_;
  WideMatrix wide_form_;
  std::vector<Matrix> reflections_;
  std::optional<Matrix> form_inverse_;
  double sign_tol_ = kRootSignTolerance;
};

enum class RootSign { Positive, Negative };

/// Sign of a root given by its coordinates in the simple-root basis. Throws
/// NumericAmbiguity when the coordinates do not clearly share one sign.
template <typename Derived>
RootSign root_sign(const Eigen::MatrixBase<Derived>& root, double tol) {
  bool has_pos = false, has_neg = false;
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    if (root[i] > tol) has_pos = true;
    else if (root[i] < -tol) has_neg = true;
  }
  if (has_pos == has_neg)
    throw Error(ErrorKind::NumericAmbiguity,
                has_pos ? "root has coordinates of both signs beyond tolerance"
                        : "root coordinates all within tolerance of zero");
  return has_pos ? RootSign::Positive : RootSign::Negative;
}

/// An element of W in ShortLex normal form together with its matrix.
struct GroupElement {
  Word normal_form;
  Matrix rep;

  int length() const noexcept { return static_cast<int>(normal_form.size()); }
};

/// ShortLex normal form of `w`: repeatedly strip the least left descent.
inline Word normal_form_word(const Word& w, const ReflectionRep& rep) {
  rep.check_word(w);
  const int n = rep.rank();
  // inv holds the matrix of the inverse of what is left to process.
  WideMatrix inv = WideMatrix::Identity(n, n);
  for (Generator s : w) rep.left_multiply(inv, s);

  Word out;
  const std::size_t max_steps = w.size();
  for (;;) {
    int descent = -1;
    for (int s = 0; s < n && descent < 0; ++s)
      if (root_sign(inv.col(s), rep.sign_tolerance()) == RootSign::Negative) descent = s;
    if (descent < 0) break;
    if (out.size() >= max_steps)
      throw Error(ErrorKind::NumericAmbiguity, "descent loop exceeded input length");
    out.push_back(descent);
    rep.right_multiply(inv, descent);
  }
  if ((inv - WideMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-6L * (1.0L + w.size()))
    throw Error(ErrorKind::NumericAmbiguity, "reduction did not return to the identity");
  return out;
}

inline int length(const Word& w, const ReflectionRep& rep) {
  return static_cast<int>(normal_form_word(w, rep).size());
}

inline GroupElement normal_form(const Word& w, const ReflectionRep& rep) {
  GroupElement g;
  g.normal_form = normal_form_word(w, rep);
  g.rep = rep.matrix_of(g.normal_form);
  return g;
}

inline bool equal(const Word& a, const Word& b, const ReflectionRep& rep) {
  return normal_form_word(a, rep) == normal_form_word(b, rep);
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline GroupElement multiply(const GroupElement& a, const GroupElement& b, const ReflectionRep& rep) {
  return normal_form(concat(a.normal_form, b.normal_form), rep);
}

inline GroupElement inverse(const GroupElement& g, const ReflectionRep& rep) {
  return normal_form(inverse_word(g.normal_form), rep);
}

// ---------------------------------------------------------------------------
// Ball enumeration

/// Elements of length <= radius in ShortLex order. `level_start[L]` is the
/// index of the first element of length L (with a sentinel at the end).
struct Ball {
  int radius = 0;
  std::vector<GroupElement> elements;
  std::vector<std::size_t> level_start;

  std::size_t size() const noexcept { return elements.size(); }
  /// Number of elements of length <= r (r <= radius).
  std::size_t size_within(int r) const { return level_start.at(std::min(r, radius) + 1); }
};

/// BFS over right multiplication. ShortLex normal forms are prefix closed, so
/// every element of length L+1 is (normal form of length L) + one letter.
inline Ball ball(const ReflectionRep& rep, int radius) {
  if (radius < 0) throw Error(ErrorKind::DegenerateInput, "radius must be >= 0");
  const int n = rep.rank();
  Ball out;
  out.radius = radius;
  std::vector<WideMatrix> wide{WideMatrix::Identity(n, n)};
  out.elements.push_back({Word{}, Matrix::Identity(n, n)});
  out.level_start = {0, 1};
  for (int level = 0; level < radius; ++level) {
    const std::size_t begin = out.level_start[level], end = out.level_start[level + 1];
    for (std::size_t i = begin; i < end; ++i) {
      for (Generator s = 0; s < n; ++s) {
        // Skip right descents: u*s would be shorter.
        if (root_sign(wide[i].col(s), rep.sign_tolerance()) == RootSign::Negative) continue;
        Word cand = out.elements[i].normal_form;
        cand.push_back(s);
        if (normal_form_word(cand, rep) != cand) continue;
        WideMatrix m = wide[i];
        rep.right_multiply(m, s);
        out.elements.push_back({std::move(cand), m.cast<double>()});
        wide.push_back(std::move(m));
      }
    }
    out.level_start.push_back(out.elements.size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Order of an element

struct InfiniteOrder {
  std::complex<double> eigenvalue;  // |eigenvalue| > 1 + tol
};
struct FiniteOrder {
  int order = 1;
};
struct UnknownOrder {};

using OrderResult = std::variant<InfiniteOrder, FiniteOrder, UnknownOrder>;

/// Default spectral-radius margin for the infinite-order certificate. Kept
/// well above the eigenvalue noise of defective (unipotent) matrices.
inline constexpr double kSpectralTolerance = 1e-5;

inline double spectral_radius(const Matrix& m, std::complex<double>* witness = nullptr) {
  Eigen::EigenSolver<Matrix> solver(m, false);
  const auto ev = solver.eigenvalues();
  double best = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) > best) {
      best = std::abs(ev[i]);
      if (witness) *witness = ev[i];
    }
  }
  return best;
}

/// Infinite when the spectral radius exceeds 1 + tol; Finite(k) when g^k = e
/// for some k <= power_cap; Unknown otherwise (e.g. parabolic elements).
inline OrderResult is_infinite_order(const GroupElement& g, const ReflectionRep& rep,
                                     int power_cap = 64, double tol = kSpectralTolerance) {
  const int n = rep.rank();
  std::complex<double> top;
  if (spectral_radius(g.rep, &top) > 1.0 + tol) return InfiniteOrder{top};
  Matrix power = Matrix::Identity(n, n);
  Word word;
  for (int k = 1; k <= power_cap; ++k) {
    power = power * g.rep;
    word.insert(word.end(), g.normal_form.begin(), g.normal_form.end());
    if (k % kRenormalizeEvery == 0) rep.renormalize(power);
    if ((power - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-6) {
      try {
        if (normal_form_word(word, rep).empty()) return FiniteOrder{k};
      } catch (const Error&) {
      }
    }
  }
  return UnknownOrder{};
}

}  // namespace coxeter
