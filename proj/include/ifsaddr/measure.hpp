#pragma once

#include <cstdint>
#include <vector>

#include "ifsaddr/conditions.hpp"
#include "ifsaddr/engine.hpp"
#include "ifsaddr/ifs.hpp"
#include "ifsaddr/parallel.hpp"

namespace ifsaddr {

/// Bernoulli measure on addresses pushed down to the attractor.
struct MeasureSampler {
  IfsSystem sys;
  std::vector<double> probs;
  std::uint64_t seed = 0;
  int trunc = 0;

  /// Throws BadProbabilityVector unless probs has m non-negative entries
  /// summing to 1 within 1e-9. trunc <= 0 selects ceil(log(1e-9)/log lambda).
  static MeasureSampler make(IfsSystem sys, std::vector<double> probs, std::uint64_t seed, int trunc = 0);
  static MeasureSampler uniform(IfsSystem sys, std::uint64_t seed, int trunc = 0);

  /// lambda^trunc diam(Omega): distance from a sample to its address limit.
  double truncation_error() const;
};

int default_truncation(double lambda);

struct MeasureSample {
  Point point;
  AddressPrefix prefix;
};

/// Sample i draws trunc digits from stream(seed, i) and projects them from
/// the centroid of Omega.
std::vector<MeasureSample> sample_natural_measure(const MeasureSampler& s, std::size_t n,
                                                  Execution exec = Execution::Parallel);

/// Fraction of sampled points certified to have two addresses within depth.
/// Throws MissingCertificate unless no_holes_certified.
Estimate mu_bifurcation_fraction(const MeasureSampler& s, std::size_t n, int depth, bool no_holes_certified,
                                 Execution exec = Execution::Parallel);

/// Occupied eps-mesh cells, cell of x = floor(x_i / eps).
struct MeshGrid {
  double epsilon = 0.0;
  std::vector<std::vector<std::int64_t>> occupied;  // sorted, unique
};

MeshGrid mesh_grid(const std::vector<Point>& points, double epsilon, Execution exec = Execution::Parallel);
std::size_t mesh_count(const std::vector<Point>& points, double epsilon, Execution exec = Execution::Parallel);

struct BoxDimRow {
  double epsilon = 0.0;
  std::size_t count = 0;
};

struct BoxDimResult {
  double slope = 0.0;
  double fit_residual = 0.0;  ///< RMS residual of the log-log fit
  std::vector<BoxDimRow> table;
};

/// Least-squares slope of log N_eps against log(1/eps). Throws TooFewScales
/// for fewer than three scales, InvalidArgument unless strictly decreasing.
BoxDimResult box_dim_estimate(const std::vector<Point>& points, const std::vector<double>& eps_list,
                              Execution exec = Execution::Parallel);
BoxDimResult fit_box_dim(std::vector<BoxDimRow> table);

/// Whether x has a single feasible chain of length depth (no branching, no
/// dead end) on the float path.
bool single_chain(const IfsSystem& sys, std::span<const double> x, int depth, double tol = kDefaultTolerance);

/// Lattice points lo + (hi - lo) i / resolution (i = 0..resolution per axis)
/// of the bounding box of Omega that lie in Omega and are not vertices of
/// Omega, first axis fastest.
std::vector<Point> omega_lattice(const IfsSystem& sys, int resolution, double tol = kDefaultTolerance);

/// Lattice points lo + (hi - lo) i / resolution (i = 0..resolution per axis)
/// of the bounding box that lie in Omega, are not vertices of Omega, and are
/// a single chain to depth. Throws InvalidArgument for resolution < 8.
std::vector<Point> uniqueness_grid(const IfsSystem& sys, int resolution, int depth,
                                   Execution exec = Execution::Parallel, double tol = kDefaultTolerance);

/// Box dimension of the uniqueness set. Each scale eps uses a grid of
/// resolution ceil(oversample * extent / eps) and the chain depth at which
/// cylinders shrink below eps, min(depth, ceil(log(eps/diam)/log lambda) + 2).
BoxDimResult box_dim_uniqueness(const IfsSystem& sys, const std::vector<double>& eps_list, int depth,
                                double oversample = 8.0, Execution exec = Execution::Parallel);

/// Chaos-game orbit from the centroid with digits drawn from probs (uniform
/// when empty); returns the iters - burn_in points after burn-in.
std::vector<Point> chaos_game(const IfsSystem& sys, std::size_t iters, std::size_t burn_in, std::uint64_t seed,
                              const std::vector<double>& probs = {});

}  // namespace ifsaddr
