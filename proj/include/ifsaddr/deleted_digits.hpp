#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ifsaddr/digit_set.hpp"
#include "ifsaddr/engine.hpp"
#include "ifsaddr/ifs.hpp"

namespace ifsaddr {

/// Komornik-Loreti constant, to the six digits usually quoted.
inline constexpr double kKomornikLoreti = 0.559525;

/// [lambda a_1 / (1 - lambda), lambda a_m / (1 - lambda)].
std::pair<double, double> attractor_interval(const DigitSet& a, double lambda);

/// The 1-D system f_j(x) = lambda (x + a_j), written as lambda x +
/// (1 - lambda) p_j with p_j = lambda a_j / (1 - lambda). The system is exact
/// when lambda and the digits are short decimals.
IfsSystem as_ifs(const DigitSet& a, double lambda);

/// classify_point on as_ifs(a, lambda) with the no-holes certificate set
/// exactly when the Pedicini condition holds. Exact arithmetic by default
/// when available. Throws PointOutsideOmega.
ClassificationReport count_expansions(const DigitSet& a, double lambda, double x, int depth,
                                      SearchOptions opts = {.arithmetic = Arithmetic::Auto});

/// Exploratory: the smallest lambda of the grid at which every interior grid
/// point of the attractor interval bifurcates within `depth`. An estimate
/// only; nullopt when no grid lambda qualifies.
std::optional<double> empirical_multiplicity_threshold(const DigitSet& a, const std::vector<double>& lambdas,
                                                       int points, int depth);

}  // namespace ifsaddr
