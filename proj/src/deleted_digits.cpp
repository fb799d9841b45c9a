#include "ifsaddr/deleted_digits.hpp"

#include <algorithm>

#include "ifsaddr/conditions.hpp"
#include "ifsaddr/error.hpp"

namespace ifsaddr {

DigitSet::DigitSet(std::vector<double> digits) : digits_(std::move(digits)) {
  if (digits_.size() < 2) throw Error(ErrorCode::InvalidArgument, "a digit set needs at least two digits");
  for (std::size_t i = 1; i < digits_.size(); ++i)
    if (!(digits_[i - 1] < digits_[i])) throw Error(ErrorCode::UnsortedDigits, "digits must be strictly increasing");
}

double DigitSet::max_gap() const {
  double g = 0.0;
  for (std::size_t i = 1; i < digits_.size(); ++i) g = std::max(g, digits_[i] - digits_[i - 1]);
  return g;
}

namespace {
void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in (0, 1)");
}
}  // namespace

std::pair<double, double> attractor_interval(const DigitSet& a, double lambda) {
  check_lambda(lambda);
  const double s = lambda / (1.0 - lambda);
  return {s * a.front(), s * a.back()};
}

IfsSystem as_ifs(const DigitSet& a, double lambda) {
  check_lambda(lambda);
  const auto l = decimal_rational(lambda);
  std::vector<RationalPoint> exact;
  if (l) {
    const Rational s = *l / (1 - *l);
    for (double v : a.digits()) {
      const auto q = decimal_rational(v);
      if (!q) break;
      exact.push_back({s * *q});
    }
  }
  if (l && exact.size() == a.size()) return IfsSystem(*l, std::move(exact));
  std::vector<Point> pts;
  const double s = lambda / (1.0 - lambda);
  for (double v : a.digits()) pts.push_back({s * v});
  return IfsSystem(lambda, std::move(pts));
}

ClassificationReport count_expansions(const DigitSet& a, double lambda, double x, int depth, SearchOptions opts) {
  const auto sys = as_ifs(a, lambda);
  const bool certified = pedicini_holds(a, lambda).holds;
  opts.no_holes_certified = certified;
  opts.mode = certified ? FeasibilityMode::ExactNoHoles : FeasibilityMode::RelaxedOmega;
  const Point p{x};
  return classify_point(sys, p, depth, opts);
}

std::optional<double> empirical_multiplicity_threshold(const DigitSet& a, const std::vector<double>& lambdas,
                                                       int points, int depth) {
  if (points < 1) throw Error(ErrorCode::InvalidArgument, "need at least one grid point");
  auto sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  for (double lambda : sorted) {
    const auto [lo, hi] = attractor_interval(a, lambda);
    bool all = true;
    for (int k = 1; k <= points && all; ++k) {
      const double x = lo + (hi - lo) * k / (points + 1);
      SearchOptions opts;
      opts.arithmetic = Arithmetic::Float;
      opts.exec = Execution::Serial;
      const auto r = count_expansions(a, lambda, x, depth, opts);
      all = r.verdict == Verdict::MultipleCertified || r.verdict == Verdict::MultipleLikely;
    }
    if (all) return lambda;
  }
  return std::nullopt;
}

}  // namespace ifsaddr
