#include "ifsaddr/triangle.hpp"

#include <cmath>
#include <map>

#include "ifsaddr/error.hpp"

namespace ifsaddr {

double lambda0() {
  auto f = [](double t) { return t * t * t + t - 1.0; };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) t -= f(t) / (3.0 * t * t + 1.0);
  return t;
}

double golden_ratio() { return (std::sqrt(5.0) - 1.0) / 2.0; }

// sqrt is correctly rounded; 1/sqrt(2) would round twice and land below.
double inv_sqrt2() { return std::sqrt(0.5); }

BarycentricTriple BarycentricTriple::make(double x, double y, double z) {
  if (!(std::fabs(x + y + z - 1.0) <= 1e-12))
    throw Error(ErrorCode::InvalidArgument, "barycentric coordinates must sum to 1");
  if (x < -1e-12 || y < -1e-12 || z < -1e-12)
    throw Error(ErrorCode::InvalidArgument, "barycentric coordinates must be non-negative");
  return {x, y, z};
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in (0, 1)");
}

void check_lambda(const Rational& lambda) {
  if (!(lambda > 0 && lambda < 1)) throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in (0, 1)");
}

}  // namespace

BarycentricTriple pi_point(double lambda) {
  check_lambda(lambda);
  const double s = 1.0 + lambda + lambda * lambda;
  return {lambda * lambda / s, lambda / s, 1.0 / s};
}

ExactTriple pi_point(const Rational& lambda) {
  check_lambda(lambda);
  const Rational s = 1 + lambda + lambda * lambda;
  return {lambda * lambda / s, lambda / s, Rational(1) / s};
}

BarycentricTriple pi_prime_point(double lambda) {
  const auto p = pi_point(lambda);
  return {p.z, p.y, p.x};
}

ExactTriple pi_prime_point(const Rational& lambda) {
  const auto p = pi_point(lambda);
  return {p.z, p.y, p.x};
}

bool gamma_nonempty(double lambda) {
  check_lambda(lambda);
  // (1-l)/l + 2(1-l) > 1  <=>  2 l^2 < 1, decided exactly on the double.
  const Rational l = exact_rational(lambda);
  return 2 * l * l < 1;
}

bool in_gamma0(const BarycentricTriple& t, double lambda) {
  check_lambda(lambda);
  return t.x < (1.0 - lambda) / lambda && t.y < 1.0 - lambda && t.z < 1.0 - lambda;
}

BarycentricTriple m_point(double lambda) {
  check_lambda(lambda);
  const double r = (1.0 - lambda) / lambda;
  return {r * r, r, (-1.0 + lambda + lambda * lambda) / (lambda * lambda)};
}

bool m_separation_holds(double lambda) { return m_point(lambda).z > 1.0 - lambda; }

bool in_image(int j, const BarycentricTriple& t, double lambda) {
  check_lambda(lambda);
  if (j < 0 || j > 2) throw Error(ErrorCode::DigitOutOfRange, "triangle digit must be 0, 1 or 2");
  return t[j] >= 1.0 - lambda && t.x >= 0.0 && t.y >= 0.0 && t.z >= 0.0;
}

bool in_delta_region(int i, const BarycentricTriple& t, double lambda) {
  if (t.x < 0.0 || t.y < 0.0 || t.z < 0.0) return false;
  for (int j = 0; j < 3; ++j)
    if (j != i && in_image(j, t, lambda)) return false;
  return true;
}

bool in_exclusive_image(int i, const BarycentricTriple& t, double lambda) {
  return in_image(i, t, lambda) && in_delta_region(i, t, lambda);
}

const char* to_string(ForcingOutcome o) noexcept {
  switch (o) {
    case ForcingOutcome::UniqueByCycle: return "UniqueByCycle";
    case ForcingOutcome::ForcedPrefixThenBranch: return "ForcedPrefixThenBranch";
    case ForcingOutcome::DeadEnd: return "DeadEnd";
    case ForcingOutcome::Undecided: return "Undecided";
  }
  return "Undecided";
}

AddressPrefix ForcingResult::address() const {
  AddressPrefix w;
  for (const auto& t : history) w.push_back(t[0] == 1 ? 0 : (t[1] == 1 ? 1 : 2));
  return w;
}

ForcingResult digit_forcing(const Rational& lambda, const ExactTriple& target, int max_steps) {
  check_lambda(lambda);
  if (target.x + target.y + target.z != 1)
    throw Error(ErrorCode::InvalidArgument, "barycentric coordinates must sum to 1");
  if (max_steps < 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be non-negative");

  const Rational top = 1 / (1 - lambda);
  std::array<Rational, 3> state{target.x * top, target.y * top, target.z * top};
  std::map<std::array<Rational, 3>, int> seen{{state, 0}};

  ForcingResult r;
  for (int step = 0; step < max_steps; ++step) {
    std::vector<int> feasible;
    std::array<Rational, 3> forced;
    for (int digit = 0; digit < 3; ++digit) {
      std::array<Rational, 3> next;
      bool ok = true;
      for (int c = 0; c < 3 && ok; ++c) {
        next[c] = (state[c] - (c == digit ? 1 : 0)) / lambda;
        ok = next[c] >= 0 && next[c] <= top;
      }
      if (ok) {
        feasible.push_back(digit);
        forced = next;
      }
    }
    r.step = step;
    if (feasible.empty()) {
      r.outcome = ForcingOutcome::DeadEnd;
      return r;
    }
    if (feasible.size() > 1) {
      r.outcome = ForcingOutcome::ForcedPrefixThenBranch;
      r.branch_digits = feasible;
      return r;
    }
    std::array<int, 3> t{0, 0, 0};
    t[static_cast<std::size_t>(feasible[0])] = 1;
    r.history.push_back(t);
    state = forced;
    auto [it, inserted] = seen.emplace(state, step + 1);
    if (!inserted) {
      r.outcome = ForcingOutcome::UniqueByCycle;
      r.step = step + 1;
      r.cycle_start = it->second;
      r.period = step + 1 - it->second;
      return r;
    }
  }
  r.step = max_steps;
  r.outcome = ForcingOutcome::Undecided;
  return r;
}

ForcingResult digit_forcing(double lambda, const BarycentricTriple& target, int max_steps) {
  const auto l = decimal_rational(lambda);
  const auto x = decimal_rational(target.x);
  const auto y = decimal_rational(target.y);
  const auto z = decimal_rational(target.z);
  if (!l || !x || !y || !z)
    throw Error(ErrorCode::IrrationalInput, "digit forcing needs rational lambda and coordinates; use classify_point");
  return digit_forcing(*l, ExactTriple{*x, *y, *z}, max_steps);
}

namespace {

void check_triangle(const IfsSystem& sys) {
  if (sys.num_maps() != 3 || sys.dim() != 2)
    throw Error(ErrorCode::InvalidArgument, "barycentric coordinates need a triangle system (3 maps in the plane)");
}

}  // namespace

Point from_barycentric(const IfsSystem& sys, const BarycentricTriple& t) {
  check_triangle(sys);
  Point out(2, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 2; ++c) out[static_cast<std::size_t>(c)] += t[i] * sys.points()[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
  return out;
}

RationalPoint from_barycentric(const IfsSystem& sys, const ExactTriple& t) {
  check_triangle(sys);
  if (!sys.has_exact()) throw Error(ErrorCode::IrrationalInput, "system has no exact rational form");
  RationalPoint out(2, Rational(0));
  for (int i = 0; i < 3; ++i)
    for (std::size_t c = 0; c < 2; ++c) out[c] += t[i] * sys.exact_points()[static_cast<std::size_t>(i)][c];
  return out;
}

BarycentricTriple to_barycentric(const IfsSystem& sys, std::span<const double> x) {
  check_triangle(sys);
  if (x.size() != 2) throw Error(ErrorCode::DimensionMismatch, "triangle points are 2-D");
  const auto& p = sys.points();
  const double ax = p[1][0] - p[0][0], ay = p[1][1] - p[0][1];
  const double bx = p[2][0] - p[0][0], by = p[2][1] - p[0][1];
  const double rx = x[0] - p[0][0], ry = x[1] - p[0][1];
  const double det = ax * by - ay * bx;
  const double y = (rx * by - ry * bx) / det;
  const double z = (ax * ry - ay * rx) / det;
  return {1.0 - y - z, y, z};
}

std::vector<GammaScanPoint> gamma_unique_scan(const Rational& lambda, int resolution, int max_steps) {
  check_lambda(lambda);
  if (resolution < 1) throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  const Rational bx = (1 - lambda) / lambda;
  const Rational byz = 1 - lambda;
  std::vector<GammaScanPoint> out;
  for (int a = 0; a <= resolution; ++a) {
    for (int b = 0; a + b <= resolution; ++b) {
      ExactTriple t{Rational(a, resolution), Rational(b, resolution), Rational(resolution - a - b, resolution)};
      t.x.canonicalize();
      t.y.canonicalize();
      t.z.canonicalize();
      if (!(t.x < bx && t.y < byz && t.z < byz)) continue;
      auto r = digit_forcing(lambda, t, max_steps);
      if (r.outcome == ForcingOutcome::UniqueByCycle) out.push_back({t, std::move(r)});
    }
  }
  return out;
}

}  // namespace ifsaddr
