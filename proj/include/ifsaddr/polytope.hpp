#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ifsaddr/point.hpp"
#include "ifsaddr/rational.hpp"

namespace ifsaddr {

/// Membership query flavour. InteriorMargin(tau) asks whether the closed
/// ball of radius tau around the point lies inside the polytope.
struct Membership {
  enum class Kind { Closed, InteriorMargin };
  Kind kind = Kind::Closed;
  double tau = 0.0;

  static Membership closed() { return {}; }
  static Membership interior(double tau) { return {Kind::InteriorMargin, tau}; }
};

/// normal . x <= offset
template <class T>
struct Halfspace {
  std::vector<T> normal;
  T offset{};
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  ///< zero when exact (dim <= 2)
  bool exact = true;
};

struct BoundingBox {
  Point lo;
  Point hi;
};

/// Convex hull of a finite generator set. Membership is decided by linear
/// feasibility over convex-combination weights; for dim <= 2 a halfspace
/// description is also built (hull walk) and used as the fast path.
/// An exact rational twin is kept when the generators are given exactly.
class Polytope {
 public:
  explicit Polytope(std::vector<Point> generators);
  explicit Polytope(std::vector<RationalPoint> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<Point>& generators() const { return generators_; }
  bool has_halfspaces() const { return !halfspaces_.empty(); }
  const std::vector<Halfspace<double>>& halfspaces() const { return halfspaces_; }
  /// Hull vertices in counter-clockwise order (dim 2), or {lo, hi} (dim 1).
  const std::vector<Point>& hull_vertices() const { return hull_; }

  bool has_exact() const { return !exact_generators_.empty(); }
  const std::vector<RationalPoint>& exact_generators() const { return exact_generators_; }

  bool contains(std::span<const double> x, Membership mode = Membership::closed(),
                double tol = kDefaultTolerance) const;
  /// Exact path; requires has_exact().
  bool contains(std::span<const Rational> x, Membership mode = Membership::closed()) const;

  /// Largest pairwise generator distance.
  double diameter() const { return diameter_; }
  Point centroid() const;
  BoundingBox bounds() const;

  /// Exact for dim <= 2; Monte Carlo over the bounding box otherwise.
  VolumeEstimate volume(std::size_t samples = 200000, std::uint64_t seed = 0x5eedULL) const;

 private:
  void build(double tol);
  void check_dim(std::size_t n) const;

  std::size_t dim_ = 0;
  std::vector<Point> generators_;
  std::vector<Point> hull_;
  std::vector<Halfspace<double>> halfspaces_;  // unit normals
  std::vector<RationalPoint> exact_generators_;
  std::vector<Halfspace<Rational>> exact_halfspaces_;  // unnormalized
  double diameter_ = 0.0;
};

namespace detail {

/// Phase-I simplex: is x a convex combination of gens? `slack` is the
/// admissible total residual (0 on the exact path).
bool convex_feasible(const std::vector<Point>& gens, std::span<const double> x, double slack);
bool convex_feasible(const std::vector<RationalPoint>& gens, std::span<const Rational> x);

}  // namespace detail

}  // namespace ifsaddr
