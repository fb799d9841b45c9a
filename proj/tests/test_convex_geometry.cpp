#include <doctest.h>

#include "ifsaddr/error.hpp"
#include "ifsaddr/ifs.hpp"
#include "ifsaddr/polytope.hpp"
#include "ifsaddr/random.hpp"
#include "oracles.hpp"

using namespace ifsaddr;

namespace {

Polytope hull(std::vector<Point> g) { return Polytope(std::move(g)); }

const Polytope kUnit = hull({{0.0}, {1.0}});
const Polytope kTriangle = hull({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});

Polytope unit_cube() {
  std::vector<Point> g;
  for (int b = 0; b < 8; ++b) g.push_back({double(b & 1), double((b >> 1) & 1), double((b >> 2) & 1)});
  return Polytope(g);
}

}  // namespace

TEST_CASE("closed and interior membership examples") {
  CHECK(kUnit.contains(Point{0.5}));
  CHECK_FALSE(kUnit.contains(Point{0.0}, Membership::interior(0.01)));
  CHECK(kUnit.contains(Point{0.0}));
  CHECK(kUnit.contains(Point{1.0 + 5e-10}));
  CHECK_FALSE(kUnit.contains(Point{1.0 + 1e-6}));
  CHECK(kTriangle.contains(Point{0.25, 0.25}));
  CHECK_FALSE(kTriangle.contains(Point{0.6, 0.6}));
  CHECK(kTriangle.contains(Point{0.25, 0.25}, Membership::interior(0.1)));
  CHECK(kTriangle.contains(Point{0.25, 0.25}, Membership::interior(0.24)));
  CHECK_FALSE(kTriangle.contains(Point{0.25, 0.25}, Membership::interior(0.26)));
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(kTriangle.contains(Point{0.1}), Error);
  try {
    kTriangle.contains(Point{0.1, 0.1, 0.1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("2-D membership agrees with barycentric signs") {
  // A skewed quadrilateral given with a redundant interior generator.
  const Polytope quad = hull({{0.0, 0.0}, {2.0, 0.2}, {1.7, 1.5}, {0.1, 1.0}, {1.0, 0.5}});
  REQUIRE(quad.hull_vertices().size() == 4);
  SplitMix64 rng(3);
  const auto& h = quad.hull_vertices();
  for (int trial = 0; trial < 4000; ++trial) {
    const Point x{-0.5 + 3.0 * rng.uniform(), -0.5 + 2.5 * rng.uniform()};
    bool inside = true;
    double margin = 1e9;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& a = h[i];
      const auto& b = h[(i + 1) % h.size()];
      const double ex = b[0] - a[0], ey = b[1] - a[1];
      const double cross = ex * (x[1] - a[1]) - ey * (x[0] - a[0]);
      margin = std::min(margin, cross / std::hypot(ex, ey));
      if (cross < 0) inside = false;
    }
    if (std::fabs(margin) < 1e-6) continue;
    CHECK(quad.contains(x) == inside);
    CHECK(detail::convex_feasible(quad.generators(), x, 1e-9) == inside);
  }
}

TEST_CASE("3-D membership by linear feasibility") {
  const Polytope cube = unit_cube();
  const Polytope tet = hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  SplitMix64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Point x{-0.2 + 1.4 * rng.uniform(), -0.2 + 1.4 * rng.uniform(), -0.2 + 1.4 * rng.uniform()};
    double lo = 1e9;
    for (double v : x) lo = std::min({lo, v, 1.0 - v});
    if (std::fabs(lo) > 1e-6) CHECK(cube.contains(x) == (lo > 0));
    const double s = 1.0 - x[0] - x[1] - x[2];
    const double m = std::min({x[0], x[1], x[2], s});
    if (std::fabs(m) > 1e-6) CHECK(tet.contains(x) == (m > 0));
  }
  CHECK(cube.contains(Point{0.5, 0.5, 0.5}, Membership::interior(0.1)));
  CHECK_FALSE(cube.contains(Point{0.5, 0.5, 0.05}, Membership::interior(0.1)));
}

TEST_CASE("exact membership decides boundary points exactly") {
  const Polytope tri(std::vector<RationalPoint>{{oracle::q(0), oracle::q(0)},
                                                {oracle::q(1), oracle::q(0)},
                                                {oracle::q(0), oracle::q(1)}});
  REQUIRE(tri.has_exact());
  const RationalPoint on_edge{oracle::q(1, 2), oracle::q(1, 2)};
  CHECK(tri.contains(std::span<const Rational>(on_edge)));
  Rational tiny(1);
  mpz_ui_pow_ui(tiny.get_den_mpz_t(), 10, 40);
  tiny.canonicalize();
  const RationalPoint outside{oracle::q(1, 2) + tiny, oracle::q(1, 2)};
  CHECK_FALSE(tri.contains(std::span<const Rational>(outside)));

  const Polytope tet(std::vector<RationalPoint>{{oracle::q(0), oracle::q(0), oracle::q(0)},
                                                {oracle::q(1), oracle::q(0), oracle::q(0)},
                                                {oracle::q(0), oracle::q(1), oracle::q(0)},
                                                {oracle::q(0), oracle::q(0), oracle::q(1)}});
  const RationalPoint face{oracle::q(1, 3), oracle::q(1, 3), oracle::q(1, 3)};
  const RationalPoint beyond{oracle::q(1, 3), oracle::q(1, 3), oracle::q(1, 3) + tiny};
  CHECK(tet.contains(std::span<const Rational>(face)));
  CHECK_FALSE(tet.contains(std::span<const Rational>(beyond)));
}

TEST_CASE("membership is monotone in the mode") {
  SplitMix64 rng(9);
  const Polytope cube = unit_cube();
  for (int trial = 0; trial < 1000; ++trial) {
    const Point x2{rng.uniform(), rng.uniform()};
    const double t1 = 0.2 * rng.uniform(), t2 = t1 + 0.2 * rng.uniform();
    if (kTriangle.contains(x2, Membership::interior(t2))) {
      CHECK(kTriangle.contains(x2, Membership::interior(t1)));
      CHECK(kTriangle.contains(x2));
    }
    const Point x3{rng.uniform(), rng.uniform(), rng.uniform()};
    if (cube.contains(x3, Membership::interior(t2))) {
      CHECK(cube.contains(x3, Membership::interior(t1)));
      CHECK(cube.contains(x3));
    }
  }
}

TEST_CASE("generators are members") {
  const Polytope cube = unit_cube();
  for (const auto* p : {&kUnit, &kTriangle, &cube})
    for (const auto& g : p->generators()) CHECK(p->contains(g));
}

TEST_CASE("image_polytope examples") {
  const IfsSystem one(0.6, {{0.0}, {1.0}});
  CHECK(image_polytope(one, AddressPrefix{}).generators() == one.omega().generators());
  const auto img = image_polytope(one, AddressPrefix{1});
  CHECK(img.bounds().lo[0] == doctest::Approx(0.4));
  CHECK(img.bounds().hi[0] == doctest::Approx(1.0));

  const IfsSystem half(0.5, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  const auto medial = image_polytope(half, AddressPrefix{0});
  const std::vector<Point> want{{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(medial.generators()[i][0] == doctest::Approx(want[i][0]));
    CHECK(medial.generators()[i][1] == doctest::Approx(want[i][1]));
  }
}

TEST_CASE("images shrink and nest") {
  const IfsSystem tri(0.7, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  SplitMix64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Digit> w(rng.next() % 8);
    for (auto& d : w) d = static_cast<Digit>(rng.next() % 3);
    const auto parent = image_polytope(tri, AddressPrefix(w));
    CHECK(parent.diameter() == doctest::Approx(std::pow(0.7, double(w.size())) * tri.diameter()));
    for (Digit a = 0; a < 3; ++a) {
      const auto child = image_polytope(tri, AddressPrefix(w).extended(a));
      for (const auto& v : child.exact_generators()) CHECK(parent.contains(std::span<const Rational>(v)));
    }
  }
}

TEST_CASE("volume examples and scaling law") {
  CHECK(kUnit.volume().value == doctest::Approx(1.0));
  CHECK(kTriangle.volume().value == doctest::Approx(0.5));
  CHECK(kTriangle.volume().exact);
  const Polytope quad = hull({{0.0, 0.0}, {2.0, 0.2}, {1.7, 1.5}, {0.1, 1.0}});
  CHECK(quad.volume().value == doctest::Approx(oracle::shoelace(quad.hull_vertices())));

  const IfsSystem tri(0.7, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  const double ratio = image_polytope(tri, AddressPrefix{2, 0, 1}).volume().value / tri.omega().volume().value;
  CHECK(std::fabs(ratio - 0.117649) <= 1e-9 * 0.117649);
}

TEST_CASE("3-D volume is a Monte Carlo estimate") {
  const Polytope tet = hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto v = tet.volume(100000, 17);
  CHECK_FALSE(v.exact);
  CHECK(v.std_error > 0.0);
  CHECK(std::fabs(v.value - 1.0 / 6.0) <= 4.0 * v.std_error);
}
