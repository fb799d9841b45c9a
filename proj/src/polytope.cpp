#include "ifsaddr/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "ifsaddr/error.hpp"
#include "ifsaddr/random.hpp"

namespace ifsaddr {

namespace {

inline bool positive(double v) { return v > 1e-12; }
inline bool positive(const Rational& v) { return sgn(v) > 0; }

// Dense phase-I simplex with Bland's rule. Rows: coordinate equations plus
// sum(w) = 1; minimizes the sum of artificials.
template <class T>
T phase_one_residual(const std::vector<std::vector<T>>& gens, std::span<const T> x) {
  const std::size_t n = gens.size();
  const std::size_t d = x.size();
  const std::size_t rows = d + 1;
  const std::size_t cols = n + rows;

  std::vector<std::vector<T>> a(rows, std::vector<T>(cols, T(0)));
  std::vector<T> b(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = i < d ? gens[j][i] : T(1);
    b[i] = i < d ? x[i] : T(1);
    if (positive(T(-b[i]))) {
      b[i] = -b[i];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = -a[i][j];
    }
    a[i][n + i] = T(1);
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = n + i;

  std::vector<T> reduced(cols, T(0));
  T objective(0);
  for (std::size_t i = 0; i < rows; ++i) {
    objective += b[i];
    for (std::size_t j = 0; j < n; ++j) reduced[j] += a[i][j];
  }

  for (std::size_t iter = 0; iter < 50 * cols + 100; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (positive(reduced[j])) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    T best(0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!positive(a[i][enter])) continue;
      T ratio = b[i] / a[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction cannot occur in phase I

    const T pivot = a[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) a[leave][j] /= pivot;
    b[leave] /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || a[i][enter] == T(0)) continue;
      const T f = a[i][enter];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[leave][j];
      b[i] -= f * b[leave];
    }
    const T f = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= f * a[leave][j];
    objective -= f * b[leave];
    basis[leave] = enter;
  }
  return objective;
}

template <class T>
T cross(const std::vector<T>& o, const std::vector<T>& a, const std::vector<T>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
template <class T>
std::vector<std::vector<T>> hull_2d(std::vector<std::vector<T>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<std::vector<T>> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && !positive(cross(h[k - 2], h[k - 1], pts[i]))) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && !positive(cross(h[k - 2], h[k - 1], pts[i]))) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

template <class T>
std::vector<Halfspace<T>> halfspaces_from_hull(const std::vector<std::vector<T>>& hull, std::size_t dim) {
  std::vector<Halfspace<T>> hs;
  if (dim == 1) {
    hs.push_back({{T(-1)}, T(-hull.front()[0])});
    hs.push_back({{T(1)}, hull.back()[0]});
    return hs;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    Halfspace<T> h;
    h.normal = {T(b[1] - a[1]), T(a[0] - b[0])};
    h.offset = h.normal[0] * a[0] + h.normal[1] * a[1];
    hs.push_back(std::move(h));
  }
  return hs;
}

template <class T>
std::vector<std::vector<T>> interval_hull(const std::vector<std::vector<T>>& gens) {
  auto [lo, hi] = std::minmax_element(gens.begin(), gens.end(),
                                      [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return {*lo, *hi};
}

}  // namespace

namespace detail {

bool convex_feasible(const std::vector<Point>& gens, std::span<const double> x, double slack) {
  return phase_one_residual<double>(gens, x) <= slack;
}

bool convex_feasible(const std::vector<RationalPoint>& gens, std::span<const Rational> x) {
  return sgn(phase_one_residual<Rational>(gens, x)) == 0;
}

}  // namespace detail

Polytope::Polytope(std::vector<Point> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw Error(ErrorCode::InvalidArgument, "polytope needs at least one generator");
  build(kDefaultTolerance);
}

Polytope::Polytope(std::vector<RationalPoint> generators) : exact_generators_(std::move(generators)) {
  if (exact_generators_.empty()) throw Error(ErrorCode::InvalidArgument, "polytope needs at least one generator");
  for (const auto& g : exact_generators_) generators_.push_back(to_doubles(g));
  build(kDefaultTolerance);
}

void Polytope::build(double /*tol*/) {
  dim_ = generators_.front().size();
  if (dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "zero-dimensional generators");
  for (const auto& g : generators_) {
    if (g.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "generators of mixed dimension");
  }
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      diameter_ = std::max(diameter_, distance(generators_[i], generators_[j]));

  if (dim_ == 1) {
    hull_ = interval_hull(generators_);
  } else if (dim_ == 2) {
    hull_ = hull_2d(generators_);
  }
  if (dim_ <= 2 && hull_.size() >= dim_ + 1) {
    halfspaces_ = halfspaces_from_hull(hull_, dim_);
    for (auto& h : halfspaces_) {
      double norm = 0.0;
      for (double c : h.normal) norm += c * c;
      norm = std::sqrt(norm);
      for (double& c : h.normal) c /= norm;
      h.offset /= norm;
    }
    if (has_exact()) {
      auto exact_hull = dim_ == 1 ? interval_hull(exact_generators_) : hull_2d(exact_generators_);
      exact_halfspaces_ = halfspaces_from_hull(exact_hull, dim_);
    }
  }
}

void Polytope::check_dim(std::size_t n) const {
  if (n != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match polytope");
}

bool Polytope::contains(std::span<const double> x, Membership mode, double tol) const {
  check_dim(x.size());
  const bool interior = mode.kind == Membership::Kind::InteriorMargin;
  if (has_halfspaces()) {
    const double limit = interior ? -mode.tau : tol;
    for (const auto& h : halfspaces_) {
      double s = -h.offset;
      for (std::size_t i = 0; i < dim_; ++i) s += h.normal[i] * x[i];
      if (s > limit) return false;
    }
    return true;
  }
  if (!interior) return detail::convex_feasible(generators_, x, tol);
  // The cross-polytope of radius tau*sqrt(d) contains the tau-ball.
  // Phase-I residuals carry rounding noise; allow only that much.
  const double noise = 1e-12 * std::max(1.0, diameter_);
  if (!detail::convex_feasible(generators_, x, noise)) return false;
  const double r = mode.tau * std::sqrt(static_cast<double>(dim_));
  Point probe(x.begin(), x.end());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (double s : {-r, r}) {
      probe[i] = x[i] + s;
      if (!detail::convex_feasible(generators_, probe, noise)) return false;
    }
    probe[i] = x[i];
  }
  return true;
}

bool Polytope::contains(std::span<const Rational> x, Membership mode) const {
  check_dim(x.size());
  if (!has_exact()) throw Error(ErrorCode::IrrationalInput, "polytope has no exact representation");
  const bool interior = mode.kind == Membership::Kind::InteriorMargin && mode.tau > 0.0;
  const Rational tau = interior ? exact_rational(mode.tau) : Rational(0);
  if (!exact_halfspaces_.empty()) {
    for (const auto& h : exact_halfspaces_) {
      Rational slack = h.offset;
      Rational norm2 = 0;
      for (std::size_t i = 0; i < dim_; ++i) {
        slack -= h.normal[i] * x[i];
        norm2 += h.normal[i] * h.normal[i];
      }
      if (sgn(slack) < 0) return false;
      if (interior && slack * slack < tau * tau * norm2) return false;
    }
    return true;
  }
  if (!detail::convex_feasible(exact_generators_, x)) return false;
  if (!interior) return true;
  // Cross-polytope of radius tau*d contains the tau-ball (d >= sqrt(d)).
  const Rational r = tau * static_cast<long>(dim_);
  RationalPoint probe(x.begin(), x.end());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (const Rational& s : {Rational(-r), r}) {
      probe[i] = x[i] + s;
      if (!detail::convex_feasible(exact_generators_, probe)) return false;
    }
    probe[i] = x[i];
  }
  return true;
}

Point Polytope::centroid() const {
  Point c(dim_, 0.0);
  for (const auto& g : generators_)
    for (std::size_t i = 0; i < dim_; ++i) c[i] += g[i];
  for (double& v : c) v /= static_cast<double>(generators_.size());
  return c;
}

BoundingBox Polytope::bounds() const {
  BoundingBox box{generators_.front(), generators_.front()};
  for (const auto& g : generators_) {
    for (std::size_t i = 0; i < dim_; ++i) {
      box.lo[i] = std::min(box.lo[i], g[i]);
      box.hi[i] = std::max(box.hi[i], g[i]);
    }
  }
  return box;
}

VolumeEstimate Polytope::volume(std::size_t samples, std::uint64_t seed) const {
  if (dim_ == 1) return {hull_[1][0] - hull_[0][0], 0.0, true};
  if (dim_ == 2) {
    if (hull_.size() < 3) return {0.0, 0.0, true};
    double twice = 0.0;
    for (std::size_t i = 0; i < hull_.size(); ++i) {
      const auto& a = hull_[i];
      const auto& b = hull_[(i + 1) % hull_.size()];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    return {0.5 * std::fabs(twice), 0.0, true};
  }
  const BoundingBox box = bounds();
  double box_volume = 1.0;
  for (std::size_t i = 0; i < dim_; ++i) box_volume *= box.hi[i] - box.lo[i];
  std::size_t hits = 0;
  Point x(dim_);
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = SplitMix64::stream(seed, s);
    for (std::size_t i = 0; i < dim_; ++i) x[i] = box.lo[i] + rng.uniform() * (box.hi[i] - box.lo[i]);
    if (contains(x)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p * box_volume, box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), false};
}

}  // namespace ifsaddr
