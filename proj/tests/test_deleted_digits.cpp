#include <doctest.h>

#include "ifsaddr/conditions.hpp"
#include "ifsaddr/deleted_digits.hpp"
#include "ifsaddr/error.hpp"
#include "ifsaddr/random.hpp"
#include "oracles.hpp"

using namespace ifsaddr;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

// Random digit set and lambda satisfying the Pedicini condition.
std::pair<DigitSet, double> pedicini_case(SplitMix64& rng) {
  for (;;) {
    const std::size_t m = 2 + rng.next() % 4;
    std::vector<double> d{0.0};
    for (std::size_t i = 1; i < m; ++i) d.push_back(d.back() + 0.1 + rng.uniform());
    DigitSet a(d);
    const double l = 0.2 + 0.75 * rng.uniform();
    if (pedicini_holds(a, l).holds) return {a, l};
  }
}

}  // namespace

TEST_CASE("attractor interval examples") {
  auto [lo, hi] = attractor_interval(DigitSet{0.0, 1.0}, 0.6);
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(1.5));
  std::tie(lo, hi) = attractor_interval(DigitSet{0.0, 1.0, 3.0}, 0.45);
  CHECK(hi == doctest::Approx(2.454545454545));
  std::tie(lo, hi) = attractor_interval(DigitSet{-1.0, 1.0}, 0.5);
  CHECK(lo == doctest::Approx(-1.0));
  CHECK(hi == doctest::Approx(1.0));
  CHECK(code_of([] { DigitSet{0.0}; }) == ErrorCode::InvalidArgument);
}

TEST_CASE("as_ifs anchors and Omega") {
  const auto sys = as_ifs(DigitSet{0.0, 1.0}, 0.6);
  CHECK(sys.has_exact());
  CHECK(sys.points()[0][0] == 0.0);
  CHECK(sys.points()[1][0] == doctest::Approx(1.5));
  CHECK(sys.exact_points()[1][0] == oracle::q(3, 2));
  CHECK(sys.omega().bounds().hi[0] == doctest::Approx(1.5));
  CHECK_FALSE(as_ifs(DigitSet{0.0, 1.0}, 0.6180339887498949).has_exact());
}

TEST_CASE("projections are partial sums of the expansion") {
  const DigitSet a{0.0, 1.0, 3.0};
  const auto sys = as_ifs(a, 0.45);
  CHECK(sys.project_prefix(AddressPrefix{1, 2}, Point{0.0})[0] == doctest::Approx(1.0575));

  SplitMix64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [set, l] = pedicini_case(rng);
    const auto s = as_ifs(set, l);
    std::vector<Digit> w(rng.next() % 25);
    double sum = 0.0, pw = l;
    for (auto& d : w) {
      d = static_cast<Digit>(rng.next() % set.size());
      sum += set[d] * pw;
      pw *= l;
    }
    CHECK(std::fabs(s.project_prefix(AddressPrefix(w), Point{0.0})[0] - sum) <= 1e-12 * std::max(1.0, std::fabs(sum)));
  }
}

TEST_CASE("count_expansions examples") {
  CHECK(count_expansions(DigitSet{0.0, 1.0}, 0.63, 0.8, 40).verdict == Verdict::MultipleCertified);
  const auto r = count_expansions(DigitSet{0.0, 1.0, 3.0}, 0.45, 1.2, 60);
  CHECK(r.first_bifurcation.has_value());
  const auto zero = count_expansions(DigitSet{0.0, 1.0}, 0.6, 0.0, 40);
  REQUIRE(zero.verdict == Verdict::UniqueCertified);
  CHECK(zero.certificate->digits == std::vector<Digit>{0});
  CHECK(code_of([] { count_expansions(DigitSet{0.0, 1.0}, 0.6, 1.6, 10); }) == ErrorCode::PointOutsideOmega);
  CHECK(code_of([] { count_expansions(DigitSet{0.0, 1.0}, 0.6, -0.1, 10); }) == ErrorCode::PointOutsideOmega);
}

TEST_CASE("Pedicini systems have no holes") {
  SplitMix64 rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [a, l] = pedicini_case(rng);
    const auto sys = as_ifs(a, l);
    for (int n : {1, 4, 10}) CHECK(covering_deficiency(sys, n, 500, 100 + trial).fraction == 0.0);
  }
  CHECK(covering_deficiency(as_ifs(DigitSet{0.0, 1.0, 3.0}, 0.35), 8, 4000, 5).fraction > 0.05);
}

TEST_CASE("Pedicini systems have overlapping adjacent images") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [a, l] = pedicini_case(rng);
    const auto sys = as_ifs(a, l);
    bool overlap = false;
    for (Digit j = 0; j + 1 < sys.num_maps(); ++j) {
      const auto left = image_polytope(sys, AddressPrefix{j}).bounds();
      const auto right = image_polytope(sys, AddressPrefix{j + 1}).bounds();
      overlap = overlap || left.hi[0] > right.lo[0] + 1e-12;
    }
    CHECK(overlap);
  }
}

TEST_CASE("Komornik-Loreti constant") {
  CHECK(kKomornikLoreti == 0.559525);
  CHECK(0.5 < kKomornikLoreti);
  CHECK(kKomornikLoreti < 0.6180339887498949);
}

TEST_CASE("empirical multiplicity threshold is a grid scan") {
  const DigitSet a{0.0, 1.0};
  // Below 1/2 there are gaps, so no grid point bifurcates.
  CHECK_FALSE(empirical_multiplicity_threshold(a, {0.4, 0.45}, 20, 30));
  const auto t = empirical_multiplicity_threshold(a, {0.7, 0.4, 0.63}, 20, 40);
  REQUIRE(t);
  CHECK(*t >= 0.63);
  CHECK(code_of([&] { empirical_multiplicity_threshold(a, {0.6}, 0, 10); }) == ErrorCode::InvalidArgument);
}
