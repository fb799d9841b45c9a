#pragma once

#include <array>
#include <vector>

#include "ifsaddr/ifs.hpp"
#include "ifsaddr/rational.hpp"

namespace ifsaddr {

/// Root of t^3 + t - 1 in (0, 1), about 0.682327803828.
double lambda0();
/// (sqrt(5) - 1) / 2.
double golden_ratio();
double inv_sqrt2();

/// Barycentric coordinates with respect to p_0, p_1, p_2; x is the weight of
/// p_0 (normalized distance to the edge [p_1, p_2]) and so on.
struct BarycentricTriple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  /// Throws InvalidArgument unless x + y + z = 1 within 1e-12 and every
  /// component is >= -1e-12.
  static BarycentricTriple make(double x, double y, double z);
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

struct ExactTriple {
  Rational x, y, z;
  const Rational& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  friend bool operator==(const ExactTriple&, const ExactTriple&) = default;
};

/// (lambda^2, lambda, 1) / (1 + lambda + lambda^2).
BarycentricTriple pi_point(double lambda);
ExactTriple pi_point(const Rational& lambda);
/// The reversed triple (1, lambda, lambda^2) / (1 + lambda + lambda^2).
BarycentricTriple pi_prime_point(double lambda);
ExactTriple pi_prime_point(const Rational& lambda);

/// Gamma_0 = {x < (1-lambda)/lambda, y < 1-lambda, z < 1-lambda} is a
/// nondegenerate triangle iff the three bounds sum past 1.
bool gamma_nonempty(double lambda);
bool in_gamma0(const BarycentricTriple& t, double lambda);

/// Top left corner of f_0^{-1}(Gamma_0).
BarycentricTriple m_point(double lambda);
/// z_M > 1 - lambda.
bool m_separation_holds(double lambda);

/// t lies in f_j(Delta), i.e. its j-th coordinate is at least 1 - lambda.
bool in_image(int j, const BarycentricTriple& t, double lambda);
/// Delta_i = Delta minus the other two images.
bool in_delta_region(int i, const BarycentricTriple& t, double lambda);
/// Omega_i = f_i(Delta) minus the other two images.
bool in_exclusive_image(int i, const BarycentricTriple& t, double lambda);

enum class ForcingOutcome { UniqueByCycle, ForcedPrefixThenBranch, DeadEnd, Undecided };

const char* to_string(ForcingOutcome o) noexcept;

struct ForcingResult {
  ForcingOutcome outcome = ForcingOutcome::Undecided;
  /// Steps forced before the outcome was decided.
  int step = 0;
  int period = 0;
  int cycle_start = 0;
  /// Forced digit triples (a_n, b_n, c_n); (1,0,0) is map 0.
  std::vector<std::array<int, 3>> history;
  /// Digits feasible at `step` when the outcome is a branch.
  std::vector<int> branch_digits;

  AddressPrefix address() const;
};

/// Forces the 0-1 digit triples of target one step at a time in exact
/// arithmetic. Remainders are kept in prefix-sum units X = x / (1 - lambda);
/// a digit is feasible when all three shifted remainders stay in
/// [0, 1/(1-lambda)]. Throws LambdaOutOfRange, InvalidArgument when the
/// target does not sum to 1.
ForcingResult digit_forcing(const Rational& lambda, const ExactTriple& target, int max_steps);
/// Float entry point; throws IrrationalInput unless lambda and the target
/// are short decimals.
ForcingResult digit_forcing(double lambda, const BarycentricTriple& target, int max_steps);

/// Cartesian point of a barycentric triple in a triangle system, and back.
/// Throws InvalidArgument unless sys has three maps in the plane.
Point from_barycentric(const IfsSystem& sys, const BarycentricTriple& t);
RationalPoint from_barycentric(const IfsSystem& sys, const ExactTriple& t);
BarycentricTriple to_barycentric(const IfsSystem& sys, std::span<const double> x);

/// Exploratory: lattice triples with denominator `resolution` inside
/// Gamma_0 whose forcing closes a cycle within max_steps.
struct GammaScanPoint {
  ExactTriple point;
  ForcingResult result;
};
std::vector<GammaScanPoint> gamma_unique_scan(const Rational& lambda, int resolution, int max_steps);

}  // namespace ifsaddr
