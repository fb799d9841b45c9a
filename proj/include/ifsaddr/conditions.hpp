#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ifsaddr/digit_set.hpp"
#include "ifsaddr/ifs.hpp"
#include "ifsaddr/parallel.hpp"
#include "ifsaddr/random.hpp"

namespace ifsaddr {

struct ThresholdCheck {
  bool holds = false;
  double threshold = 0.0;
};

/// lambda > m^(-1/d): the images cannot fit disjointly, so OSC fails.
ThresholdCheck osc_failure_sufficient(const IfsSystem& sys);
/// lambda >= d/(d+1): the attractor is all of Omega.
ThresholdCheck no_holes_sufficient(const IfsSystem& sys);

/// Monte Carlo fraction with its binomial standard error.
struct Estimate {
  double fraction = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

Estimate make_estimate(std::size_t hits, std::size_t samples);

/// Uniform point of Omega by rejection from its bounding box.
Point uniform_in_omega(const IfsSystem& sys, SplitMix64& rng);

/// Fraction of uniform points of Omega outside the union of f_w(Omega),
/// |w| = n. Sample i uses stream(seed, i).
Estimate covering_deficiency(const IfsSystem& sys, int n, std::size_t samples, std::uint64_t seed,
                             Execution exec = Execution::Parallel, double tol = kDefaultTolerance);

/// (i, k, j, ell) such that the block image f_k f_j^(ell-1)(Omega) sits in
/// f_i(Omega) and f_k(Omega), with ell minimal.
struct OverlapWitness {
  Digit i = 0;
  Digit k = 0;
  Digit j = 0;
  int ell = 0;
  /// f_k(p_j) lies in the interior of f_i(Omega) with margin tol.
  bool vertex_interior = false;

  AddressPrefix block() const { return AddressPrefix{k}.extended(j, static_cast<std::size_t>(ell - 1)); }
};

inline constexpr int kMaxWitnessEll = 64;

/// Scans i != k and j in lexicographic order for every ell up to max_ell.
/// Returns nullopt if no triple works; throws NoEllFound if some triple has
/// f_k(p_j) strictly inside f_i(Omega) yet no block fits by max_ell.
std::optional<OverlapWitness> vertex_overlap_witness(const IfsSystem& sys, double tol = kDefaultTolerance,
                                                     int max_ell = kMaxWitnessEll);

/// Blocks of length ell over the map alphabet; block0 is the forcing block
/// and L = m^ell counts all blocks.
struct BlockFamily {
  int ell = 0;
  AddressPrefix block0;
  std::size_t L = 0;

  static BlockFamily from_witness(const IfsSystem& sys, const OverlapWitness& w);
};

/// Smallest n <= max_n with x in W_n, or nullopt. W_n holds the points of
/// Omega covered by some n-block word that uses block0; with no holes that
/// means F_0^{-1} F_u^{-1}(x) in Omega for some u of fewer than n blocks.
/// Throws MissingCertificate unless no_holes_certified, PointOutsideOmega,
/// BudgetExceeded past node_budget frontier nodes.
std::optional<int> wn_first_level(const IfsSystem& sys, const BlockFamily& fam, std::span<const double> x,
                                  int max_n, bool no_holes_certified, double tol = kDefaultTolerance,
                                  std::size_t node_budget = 4'000'000);

bool wn_membership(const IfsSystem& sys, const BlockFamily& fam, std::span<const double> x, int n,
                   bool no_holes_certified, double tol = kDefaultTolerance);

/// Fraction of Omega outside W_n. W_0 is empty.
Estimate wn_coverage_estimate(const IfsSystem& sys, const BlockFamily& fam, int n, std::size_t samples,
                              std::uint64_t seed, bool no_holes_certified, Execution exec = Execution::Parallel);

/// Same estimate for n = 0..max_n from one set of samples (the same points
/// for every n, so the curve is monotone).
std::vector<Estimate> wn_coverage_curve(const IfsSystem& sys, const BlockFamily& fam, int max_n,
                                        std::size_t samples, std::uint64_t seed, bool no_holes_certified,
                                        Execution exec = Execution::Parallel);

struct PediciniCheck {
  bool holds = false;
  double lhs = 0.0;  ///< largest gap between consecutive digits
  double rhs = 0.0;  ///< lambda (a_m - a_1) / (1 - lambda)
};

PediciniCheck pedicini_holds(const DigitSet& a, double lambda);

}  // namespace ifsaddr
