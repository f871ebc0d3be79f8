#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "coxeter/classification.hpp"
#include "coxeter/word.hpp"

namespace coxeter::boundary {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angle reduced to [0, 2pi).
inline double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

/// Counter-clockwise distance from `from` to `to`, in [0, 2pi).
inline double ccw_distance(double from, double to) { return normalize_angle(to - from); }

/// Point of the circle at infinity, parametrised by angle in the Klein disk of
/// the realization's frame.
struct BoundaryPoint {
  double theta = 0.0;

  BoundaryPoint() = default;
  explicit BoundaryPoint(double t) : theta(normalize_angle(t)) {}
};

/// Angular metric on the circle, bounded by pi.
inline double distance(BoundaryPoint a, BoundaryPoint b) {
  const double d = std::abs(a.theta - b.theta);
  return std::min(d, kTwoPi - d);
}

/// Proper arc of the circle: ccw from `start` through `extent` radians.
struct Arc {
  double start = 0.0;
  double extent = 0.0;
  bool closed = false;

  static Arc make(double start, double extent, bool closed) {
    if (!(extent > 0.0) || !(extent < kTwoPi))
      throw Error(ErrorKind::DegenerateInput, "arc extent must lie in (0, 2pi)");
    return Arc{normalize_angle(start), extent, closed};
  }
  /// Arc from angle `a` ccw to angle `b`.
  static Arc between(double a, double b, bool closed) { return make(a, ccw_distance(a, b), closed); }

  double end() const { return normalize_angle(start + extent); }
  double midpoint() const { return normalize_angle(start + 0.5 * extent); }

  bool contains(BoundaryPoint p) const {
    const double d = ccw_distance(start, p.theta);
    return closed ? d <= extent : (d > 0.0 && d < extent);
  }

  /// Closure of the complement (for open arcs) or interior of the complement.
  Arc complement() const { return Arc{end(), kTwoPi - extent, !closed}; }

  /// Evenly spaced points from start to end inclusive.
  std::vector<BoundaryPoint> samples(int count) const {
    std::vector<BoundaryPoint> out;
    for (int i = 0; i < count; ++i)
      out.emplace_back(start + extent * (count == 1 ? 0.5 : static_cast<double>(i) / (count - 1)));
    return out;
  }
};

/// True when `inner` is a subset of `outer`.
inline bool arc_within(const Arc& inner, const Arc& outer) {
  const double d0 = ccw_distance(outer.start, inner.start);
  const double d1 = d0 + inner.extent;
  if (outer.closed) return d1 <= outer.extent;
  if (inner.closed) return d0 > 0.0 && d1 < outer.extent;
  // open in open: endpoints may coincide
  return d1 <= outer.extent;
}

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Rank-3 system with Gram signature (2,0,1) acting on the hyperboloid model.
/// The frame maps B to diag(1, 1, -1); its third column is the basepoint x0,
/// the incentre of the fundamental triangle.
class HyperbolicRealization {
 public:
  explicit HyperbolicRealization(const CoxeterMatrix& m) {
    if (m.rank() != 3) throw Error(ErrorKind::NotHyperbolicPlane, "rank must be 3");
    const auto cls = classify(m);
    if (cls.size() != 1 || cls.front().type.kind != TypeKind::Indefinite)
      throw Error(ErrorKind::NotHyperbolicPlane, "system is not irreducible indefinite");
    if (signature(gram(m)) != Signature{2, 0, 1})
      throw Error(ErrorKind::NotHyperbolicPlane, "Gram signature is not (2,0,1)");
    rep_ = ReflectionRep(m);
    const Mat3 b = rep_.form();
    auto form = [&](const Vec3& u, const Vec3& v) { return u.dot(b * v); };

    Vec3 x0 = -b.inverse() * Vec3::Ones();
    if (form(x0, x0) >= -1e-12) {
      // Fall back to the timelike eigenvector of B.
      Eigen::SelfAdjointEigenSolver<Mat3> es(b);
      x0 = es.eigenvectors().col(0) / std::sqrt(-es.eigenvalues()[0]);
    }
    x0 /= std::sqrt(-form(x0, x0));

    std::vector<Vec3> spacelike;
    for (int s = 0; s < 3 && spacelike.size() < 2; ++s) {
      Vec3 u = Vec3::Unit(s) + form(Vec3::Unit(s), x0) * x0;
      for (const auto& e : spacelike) u -= form(u, e) * e;
      const double q = form(u, u);
      if (q > 1e-9) spacelike.push_back(u / std::sqrt(q));
    }
    frame_.col(0) = spacelike[0];
    frame_.col(1) = spacelike[1];
    frame_.col(2) = x0;
    frame_inverse_ = frame_.inverse();
  }

  const ReflectionRep& rep() const noexcept { return rep_; }
  const Mat3& frame() const noexcept { return frame_; }
  Vec3 basepoint() const { return frame_.col(2); }

  /// Matrix of `g` in frame coordinates, where the form is diag(1,1,-1).
  Mat3 in_frame(const Matrix& root_coords) const {
    return frame_inverse_ * Mat3(root_coords) * frame_;
  }
  Mat3 in_frame(const GroupElement& g) const { return in_frame(g.rep); }

 private:
  ReflectionRep rep_;
  Mat3 frame_;
  Mat3 frame_inverse_;
};

inline HyperbolicRealization realize(const CoxeterMatrix& m) { return HyperbolicRealization(m); }

/// Inverse of an element of O(2,1) in frame coordinates: J M^T J.
inline Mat3 frame_inverse(const Mat3& m) {
  const Mat3 j = Eigen::Vector3d(1, 1, -1).asDiagonal();
  return j * m.transpose() * j;
}

inline BoundaryPoint point_of(const Vec3& null_vector) {
  // Both signs of a null vector project to the same disk point.
  const double w = null_vector[2];
  return BoundaryPoint(std::atan2(null_vector[1] / w, null_vector[0] / w));
}

inline Vec3 null_vector(BoundaryPoint p) { return {std::cos(p.theta), std::sin(p.theta), 1.0}; }

inline BoundaryPoint act(const Mat3& g, BoundaryPoint p) { return point_of(g * null_vector(p)); }

inline BoundaryPoint boundary_action(const HyperbolicRealization& r, const GroupElement& g,
                                     BoundaryPoint p) {
  return act(r.in_frame(g), p);
}

/// Image of an arc; endpoints plus midpoint fix which of the two arcs it is.
inline Arc arc_image(const Mat3& g, const Arc& a) {
  const double x = act(g, BoundaryPoint(a.start)).theta;
  const double y = act(g, BoundaryPoint(a.end())).theta;
  const double mid = act(g, BoundaryPoint(a.midpoint())).theta;
  if (ccw_distance(x, mid) < ccw_distance(x, y)) return Arc{x, ccw_distance(x, y), a.closed};
  return Arc{y, ccw_distance(y, x), a.closed};
}

// ---------------------------------------------------------------------------
// Isometry classification

enum class IsometryKind { Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Elliptic: return "Elliptic";
    case IsometryKind::Parabolic: return "Parabolic";
    case IsometryKind::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

struct IsometryClass {
  IsometryKind kind = IsometryKind::Elliptic;
  double translation_length = 0.0;  // ln(spectral radius); hyperbolic only
  BoundaryPoint attracting;         // hyperbolic only
  BoundaryPoint repelling;          // hyperbolic only
};

namespace detail {

// Kernel direction of a rank-2 3x3 matrix: the largest cross product of two rows.
inline Vec3 kernel_direction(const Mat3& a) {
  Vec3 best = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Vec3 c = Vec3(a.row(i)).cross(Vec3(a.row(j)));
      if (c.norm() > best.norm()) best = c;
    }
  return best;
}

// lambda + 1/lambda for M in O(2,1): trace minus determinant.
inline double trace_invariant(const Mat3& m) { return m.trace() - m.determinant(); }

}  // namespace detail

/// Spectral radius of a frame matrix, from the trace invariant.
inline double spectral_radius(const Mat3& m) {
  const double t = detail::trace_invariant(m);
  if (t <= 2.0) return 1.0;
  return 0.5 * (t + std::sqrt(t * t - 4.0));
}

/// Hyperbolicity test on lambda + 1/lambda - 2, scaled by the matrix size so
/// that unipotent (parabolic) round-off is not mistaken for translation.
inline bool is_hyperbolic(const Mat3& m, double tol = kEigenTolerance) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return detail::trace_invariant(m) - 2.0 > tol * scale;
}

/// Attracting fixed point of a hyperbolic frame matrix.
inline BoundaryPoint attracting_point(const Mat3& m) {
  const double lambda = spectral_radius(m);
  return point_of(detail::kernel_direction(m - lambda * Mat3::Identity()));
}

/// Classification of a frame matrix that is known to be hyperbolic, or a
/// non-hyperbolic result with kind Elliptic (callers refine it).
inline std::optional<IsometryClass> hyperbolic_data(const Mat3& m, double tol = kEigenTolerance) {
  if (!is_hyperbolic(m, tol)) return std::nullopt;
  IsometryClass c;
  c.kind = IsometryKind::Hyperbolic;
  c.translation_length = std::log(spectral_radius(m));
  c.attracting = attracting_point(m);
  c.repelling = attracting_point(frame_inverse(m));
  return c;
}

/// Full classification. Non-hyperbolic elements are Elliptic when some power
/// up to `power_cap` is trivial and Parabolic when unipotent of infinite order.
inline IsometryClass classify_isometry(const HyperbolicRealization& r, const GroupElement& g,
                                       double tol = kEigenTolerance, int power_cap = 64) {
  const Mat3 m = r.in_frame(g);
  if (auto h = hyperbolic_data(m, tol)) return *h;
  const OrderResult order = is_infinite_order(g, r.rep(), power_cap, kSpectralTolerance);
  if (std::holds_alternative<FiniteOrder>(order)) return {IsometryKind::Elliptic, 0.0, {}, {}};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.determinant() > 0.0 && std::abs(m.trace() - 3.0) < 1e-6 * scale)
    return {IsometryKind::Parabolic, 0.0, {}, {}};
  throw Error(ErrorKind::NumericAmbiguity,
              "element " + word_to_string(g.normal_form) +
                  " is neither certifiably hyperbolic nor of finite order");
}

/// Angle of g^i x0 projected to the Klein disk; approaches the attracting
/// point of a hyperbolic g.
inline BoundaryPoint orbit_direction(const Mat3& g, int iterations) {
  Vec3 y(0, 0, 1);
  for (int i = 0; i < iterations; ++i) {
    y = g * y;
    y /= y[2];
  }
  return BoundaryPoint(std::atan2(y[1], y[0]));
}

/// Radial coordinate of g^i x0 in the Klein disk (tends to 1).
inline double orbit_radius(const Mat3& g, int iterations) {
  Vec3 y(0, 0, 1);
  for (int i = 0; i < iterations; ++i) {
    y = g * y;
    y /= y[2];
  }
  return std::hypot(y[0], y[1]);
}

// ---------------------------------------------------------------------------
// Limit sets and density

/// Largest gap between circularly consecutive points; 2pi for at most one point.
inline double max_gap(std::span<const BoundaryPoint> points) {
  if (points.size() <= 1) return kTwoPi;
  std::vector<double> t;
  t.reserve(points.size());
  for (const auto& p : points) t.push_back(p.theta);
  std::sort(t.begin(), t.end());
  double gap = kTwoPi - (t.back() - t.front());
  for (std::size_t i = 1; i < t.size(); ++i) gap = std::max(gap, t[i] - t[i - 1]);
  return gap;
}

/// Sorts by angle and merges points closer than `tol` (circularly).
inline std::vector<BoundaryPoint> dedup(std::vector<BoundaryPoint> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.theta < b.theta; });
  std::vector<BoundaryPoint> out;
  for (const auto& p : pts)
    if (out.empty() || p.theta - out.back().theta > tol) out.push_back(p);
  if (out.size() > 1 && kTwoPi - (out.back().theta - out.front().theta) <= tol) out.pop_back();
  return out;
}

inline constexpr double kDedupTolerance = 1e-9;

/// Attracting points of the hyperbolic elements of length <= radius in `b`.
inline std::vector<BoundaryPoint> limit_set_sample(const HyperbolicRealization& r, const Ball& b,
                                                   int radius, double tol = kEigenTolerance) {
  std::vector<BoundaryPoint> pts;
  const std::size_t count = b.size_within(radius);
  for (std::size_t i = 0; i < count; ++i)
    if (auto h = hyperbolic_data(r.in_frame(b.elements[i]), tol)) pts.push_back(h->attracting);
  return dedup(std::move(pts), kDedupTolerance);
}

inline std::vector<BoundaryPoint> limit_set_sample(const HyperbolicRealization& r, int radius) {
  return limit_set_sample(r, ball(r.rep(), radius), radius);
}

// ---------------------------------------------------------------------------
// North-south dynamics

struct NorthSouthReport {
  BoundaryPoint attracting;
  BoundaryPoint repelling;
  int n_samples = 0;
  int n_excluded = 0;
  int n_converged = 0;
  double fraction_converged = 0.0;
  double worst_distance = 0.0;  // over non-excluded samples
};

struct NorthSouthOptions {
  int n_samples = 360;
  int n_iter = 200;
  double tol = 1e-3;
  double exclusion = 1e-2;
};

/// Iterates the boundary action of hyperbolic `g` on the given samples.
inline NorthSouthReport verify_north_south(const Mat3& g, std::span<const BoundaryPoint> samples,
                                           const NorthSouthOptions& opt = {}) {
  const auto h = hyperbolic_data(g);
  if (!h) throw Error(ErrorKind::DegenerateInput, "north-south check needs a hyperbolic element");
  NorthSouthReport rep;
  rep.attracting = h->attracting;
  rep.repelling = h->repelling;
  rep.n_samples = static_cast<int>(samples.size());
  for (const auto& p : samples) {
    if (distance(p, h->repelling) < opt.exclusion) {
      ++rep.n_excluded;
      continue;
    }
    Vec3 y = null_vector(p);
    for (int i = 0; i < opt.n_iter; ++i) {
      y = g * y;
      y /= y[2];
    }
    const double d = distance(point_of(y), h->attracting);
    rep.worst_distance = std::max(rep.worst_distance, d);
    if (d < opt.tol) ++rep.n_converged;
  }
  const int considered = rep.n_samples - rep.n_excluded;
  rep.fraction_converged = considered > 0 ? static_cast<double>(rep.n_converged) / considered : 1.0;
  return rep;
}

/// Equispaced samples theta_i = 2 pi i / n.
inline std::vector<BoundaryPoint> equispaced(int n) {
  std::vector<BoundaryPoint> out;
  for (int i = 0; i < n; ++i) out.emplace_back(kTwoPi * i / n);
  return out;
}

inline NorthSouthReport verify_north_south(const Mat3& g, const NorthSouthOptions& opt = {}) {
  const auto pts = equispaced(opt.n_samples);
  return verify_north_south(g, pts, opt);
}

// ---------------------------------------------------------------------------
// Searches over balls. All return the ShortLex-first witness.

inline bool maps_into(const Mat3& g, const Arc& f, const Arc& u) { return arc_within(arc_image(g, f), u); }

/// First g of length <= radius (ShortLex order) with g F inside U.
inline std::optional<GroupElement> find_contraction(const HyperbolicRealization& r, const Ball& b,
                                                    const Arc& f, const Arc& u, int radius) {
  const std::size_t count = b.size_within(radius);
  for (std::size_t i = 0; i < count; ++i)
    if (maps_into(r.in_frame(b.elements[i]), f, u)) return b.elements[i];
  return std::nullopt;
}

inline std::optional<GroupElement> find_contraction(const HyperbolicRealization& r, const Arc& f,
                                                    const Arc& u, int radius) {
  return find_contraction(r, ball(r.rep(), radius), f, u, radius);
}

/// Pointwise recheck of g F inside U at `count` sample points of F.
inline bool recheck_contraction(const Mat3& g, const Arc& f, const Arc& u, int count = 100) {
  for (const auto& p : f.samples(count))
    if (!u.contains(act(g, p))) return false;
  return true;
}

/// Both dual inclusions g(circle - U) in V and g^-1(circle - V) in U.
inline bool is_dual_pair(const Mat3& g, const Arc& u, const Arc& v) {
  return maps_into(g, u.complement(), v) && maps_into(frame_inverse(g), v.complement(), u);
}

inline std::optional<GroupElement> find_dual_pair(const HyperbolicRealization& r, const Ball& b,
                                                  const Arc& u, const Arc& v, int radius) {
  const std::size_t count = b.size_within(radius);
  for (std::size_t i = 0; i < count; ++i)
    if (is_dual_pair(r.in_frame(b.elements[i]), u, v)) return b.elements[i];
  return std::nullopt;
}

inline std::optional<GroupElement> find_dual_pair(const HyperbolicRealization& r, const Arc& u,
                                                  const Arc& v, int radius) {
  return find_dual_pair(r, ball(r.rep(), radius), u, v, radius);
}

// ---------------------------------------------------------------------------
// Minimality and scrambled statistics

inline std::vector<BoundaryPoint> orbit(const HyperbolicRealization& r, const Ball& b,
                                        BoundaryPoint alpha, int radius) {
  std::vector<BoundaryPoint> out;
  const std::size_t count = b.size_within(radius);
  for (std::size_t i = 0; i < count; ++i) out.push_back(act(r.in_frame(b.elements[i]), alpha));
  return out;
}

/// Largest gap of the orbit of alpha over the ball of the given radius.
inline double verify_minimality(const HyperbolicRealization& r, const Ball& b, BoundaryPoint alpha,
                                int radius) {
  const auto pts = orbit(r, b, alpha, radius);
  return max_gap(pts);
}

inline double verify_minimality(const HyperbolicRealization& r, BoundaryPoint alpha, int radius) {
  return verify_minimality(r, ball(r.rep(), radius), alpha, radius);
}

struct ScrambledStats {
  double max_d = 0.0;
  double min_d = 0.0;
};

inline ScrambledStats scrambled_stats(const HyperbolicRealization& r, const Ball& b,
                                      BoundaryPoint alpha, BoundaryPoint beta, int radius) {
  if (distance(alpha, beta) == 0.0)
    throw Error(ErrorKind::DegenerateInput, "scrambled statistics need distinct points");
  ScrambledStats s{0.0, std::numbers::pi};
  const std::size_t count = b.size_within(radius);
  for (std::size_t i = 0; i < count; ++i) {
    const Mat3 g = r.in_frame(b.elements[i]);
    const double d = distance(act(g, alpha), act(g, beta));
    s.max_d = std::max(s.max_d, d);
    s.min_d = std::min(s.min_d, d);
  }
  return s;
}

inline ScrambledStats scrambled_stats(const HyperbolicRealization& r, BoundaryPoint alpha,
                                      BoundaryPoint beta, int radius) {
  return scrambled_stats(r, ball(r.rep(), radius), alpha, beta, radius);
}

}  // namespace coxeter::boundary
