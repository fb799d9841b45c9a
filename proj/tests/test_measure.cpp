#include <doctest.h>

#include <algorithm>
#include <set>

#include "ifsaddr/error.hpp"
#include "ifsaddr/measure.hpp"
#include "ifsaddr/random.hpp"
#include "ifsaddr/triangle.hpp"
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

IfsSystem unit_interval(double lambda) { return IfsSystem(lambda, {{0.0}, {1.0}}); }
IfsSystem triangle(double lambda) { return IfsSystem(lambda, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}); }

std::vector<Point> square_cloud(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  return pts;
}

}  // namespace

TEST_CASE("probability vectors are validated") {
  const auto tri = triangle(0.7);
  CHECK(code_of([&] { MeasureSampler::make(tri, {0.5, 0.5}, 1); }) == ErrorCode::BadProbabilityVector);
  CHECK(code_of([&] { MeasureSampler::make(tri, {0.5, 0.6, -0.1}, 1); }) == ErrorCode::BadProbabilityVector);
  CHECK(code_of([&] { MeasureSampler::make(tri, {0.3, 0.3, 0.3}, 1); }) == ErrorCode::BadProbabilityVector);
  CHECK_NOTHROW(MeasureSampler::make(tri, {0.2, 0.3, 0.5}, 1));
  CHECK(MeasureSampler::uniform(tri, 1).probs == std::vector<double>(3, 1.0 / 3.0));
}

TEST_CASE("default truncation keeps the sampling error below 1e-9") {
  for (double l : {0.5, 0.6, 0.7, 0.9}) {
    const int t = default_truncation(l);
    CHECK(std::pow(l, t) <= 1e-9);
    CHECK(std::pow(l, t - 1) > 1e-9);
  }
  const auto s = MeasureSampler::uniform(triangle(0.7), 3);
  CHECK(s.trunc == default_truncation(0.7));
  CHECK(s.truncation_error() == doctest::Approx(std::pow(0.7, s.trunc) * std::sqrt(2.0)));
}

TEST_CASE("degenerate probabilities give the fixed point") {
  const auto s = MeasureSampler::make(triangle(0.7), {1.0, 0.0, 0.0}, 4);
  for (const auto& m : sample_natural_measure(s, 50)) {
    CHECK(std::hypot(m.point[0], m.point[1]) <= s.truncation_error());
    CHECK(m.prefix == AddressPrefix{}.extended(0, static_cast<std::size_t>(s.trunc)));
  }
  CHECK(mu_bifurcation_fraction(s, 50, 40, true).fraction == 0.0);
}

TEST_CASE("samples sit within the truncation error of their address limit") {
  const auto tri = triangle(0.7);
  const auto s = MeasureSampler::uniform(tri, 5);
  for (const auto& m : sample_natural_measure(s, 200)) {
    CHECK(m.prefix.size() == static_cast<std::size_t>(s.trunc));
    for (const auto& v : tri.points()) CHECK(distance(tri.project_prefix(m.prefix, v), m.point) <= s.truncation_error());
  }
}

TEST_CASE("natural measure of the gasket occupies exactly the gasket cells") {
  const auto s = MeasureSampler::uniform(triangle(0.5), 6);
  std::vector<Point> pts;
  for (auto& m : sample_natural_measure(s, 20000)) pts.push_back(m.point);
  const auto grid = mesh_grid(pts, 1.0 / 16.0);
  std::set<std::vector<std::int64_t>> want;
  for (auto [i, j] : oracle::gasket_cells(4)) want.insert({i, j});
  CHECK(std::set<std::vector<std::int64_t>>(grid.occupied.begin(), grid.occupied.end()) == want);
}

TEST_CASE("same seed gives the same samples") {
  const auto s = MeasureSampler::uniform(triangle(0.7), 99);
  const auto a = sample_natural_measure(s, 300);
  const auto b = sample_natural_measure(s, 300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].point == b[i].point);
    CHECK(a[i].prefix == b[i].prefix);
  }
  const auto c = sample_natural_measure(MeasureSampler::uniform(triangle(0.7), 100), 300);
  CHECK(c[0].prefix != a[0].prefix);
}

TEST_CASE("bifurcation fraction examples") {
  const auto tri = MeasureSampler::uniform(triangle(0.7), 7);
  CHECK(mu_bifurcation_fraction(tri, 1000, 40, true).fraction >= 0.99);
  const auto one = MeasureSampler::make(unit_interval(0.63), {0.5, 0.5}, 8);
  CHECK(mu_bifurcation_fraction(one, 1000, 50, true).fraction == 1.0);
  CHECK(code_of([&] { mu_bifurcation_fraction(tri, 10, 40, false); }) == ErrorCode::MissingCertificate);
}

TEST_CASE("mesh_count examples") {
  CHECK(mesh_count({{0.3, 0.7}}, 0.1) == 1);
  std::vector<Point> seg;
  for (int i = 0; i <= 10000; ++i) seg.push_back({i / 10000.0});
  const auto n = mesh_count(seg, 1.0 / 8.0);
  CHECK(n >= 8);
  CHECK(n <= 9);
  for (int k = 1; k <= 6; ++k) CHECK(mesh_count(oracle::gasket_centroids(k), std::ldexp(1.0, -k)) == std::pow(3, k));
  const auto g = mesh_grid({{-0.05, 0.25}, {0.05, 0.25}}, 0.1);
  CHECK(g.occupied == std::vector<std::vector<std::int64_t>>{{-1, 2}, {0, 2}});
}

TEST_CASE("mesh counts grow under refinement but not too fast") {
  const auto pts = chaos_game(triangle(0.6), 50000, 200, 11);
  for (double eps = 0.5; eps > 1e-3; eps /= 2) {
    const auto coarse = mesh_count(pts, eps);
    const auto fine = mesh_count(pts, eps / 2);
    CHECK(fine >= coarse);
    CHECK(fine <= 4 * coarse);
  }
}

TEST_CASE("box dimension of the gasket and the square") {
  const std::vector<double> eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  const auto gasket = box_dim_estimate(chaos_game(triangle(0.5), 200000, 1000, 3), eps);
  CHECK(gasket.slope >= 1.38);
  CHECK(gasket.slope <= 1.78);
  CHECK(gasket.table.size() == eps.size());
  const auto exact = box_dim_estimate(oracle::gasket_centroids(7), eps);
  CHECK(exact.slope == doctest::Approx(std::log(3.0) / std::log(2.0)));
  CHECK(exact.fit_residual < 1e-9);
  const auto square = box_dim_estimate(square_cloud(200000, 4), {0.25, 0.125, 0.0625, 0.03125, 0.015625});
  CHECK(std::fabs(square.slope - 2.0) <= 0.1);
}

TEST_CASE("box dimension fit errors") {
  const auto pts = square_cloud(100, 1);
  CHECK(code_of([&] { box_dim_estimate(pts, {0.5, 0.25}); }) == ErrorCode::TooFewScales);
  CHECK(code_of([&] { box_dim_estimate(pts, {0.5, 0.5, 0.25}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { box_dim_estimate(pts, {0.1, 0.2, 0.3}); }) == ErrorCode::InvalidArgument);
  const auto fit = fit_box_dim({{1.0, 1}, {0.5, 4}, {0.25, 16}});
  CHECK(fit.slope == doctest::Approx(2.0));
}

TEST_CASE("chaos game") {
  const auto tri = triangle(0.7);
  const auto pts = chaos_game(tri, 5000, 100, 2);
  CHECK(pts.size() == 4900);
  for (const auto& p : pts) CHECK(tri.omega().contains(p));
  CHECK(chaos_game(tri, 5000, 100, 2) == pts);
  const auto corner = chaos_game(tri, 500, 100, 2, {1.0, 0.0, 0.0});
  CHECK(std::hypot(corner.back()[0], corner.back()[1]) < 1e-12);
}

TEST_CASE("lattice of Omega") {
  const auto pts = omega_lattice(unit_interval(0.6), 8);
  CHECK(pts.size() == 7);
  CHECK(pts.front()[0] == doctest::Approx(0.125));
  const auto tri = omega_lattice(triangle(0.6), 4);
  // (i, j) with i + j <= 4 minus the three vertices.
  CHECK(tri.size() == 12);
}

TEST_CASE("single chain examples") {
  CHECK(single_chain(unit_interval(0.6), Point{0.0}, 30));
  CHECK_FALSE(single_chain(unit_interval(0.6), Point{0.5}, 30));
  CHECK_FALSE(single_chain(unit_interval(0.4), Point{0.5}, 30));  // dead end in the gap
}

TEST_CASE("uniqueness grid examples") {
  CHECK(uniqueness_grid(unit_interval(0.63), 256, 50).empty());
  CHECK(uniqueness_grid(unit_interval(0.63), 1000, 50).empty());
  CHECK_FALSE(uniqueness_grid(unit_interval(0.53), 1024, 40).empty());
  CHECK(code_of([] { uniqueness_grid(unit_interval(0.53), 4, 10); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("the lattice cell at pi(0.6) keeps a single chain") {
  const auto sys = triangle(0.6);
  const auto pi = from_barycentric(sys, pi_point(0.6));
  for (int res : {32, 64, 128}) {
    const double h = 1.0 / res;
    const int depth = static_cast<int>(std::ceil(std::log(h / sys.diameter()) / std::log(0.6))) + 2;
    const auto grid = uniqueness_grid(sys, res, depth);
    const std::int64_t ci = static_cast<std::int64_t>(std::floor(pi[0] / h));
    const std::int64_t cj = static_cast<std::int64_t>(std::floor(pi[1] / h));
    bool marked = false;
    for (const auto& p : grid)
      marked = marked || (std::llround(p[0] / h) >= ci && std::llround(p[0] / h) <= ci + 1 &&
                          std::llround(p[1] / h) >= cj && std::llround(p[1] / h) <= cj + 1);
    CHECK(marked);
  }
}

TEST_CASE("deeper uniqueness grids are subsets") {
  for (const auto& sys : {unit_interval(0.53), unit_interval(0.58), triangle(0.6)}) {
    const int res = sys.dim() == 1 ? 2048 : 96;
    for (int depth : {8, 14}) {
      const auto shallow = uniqueness_grid(sys, res, depth);
      const auto deep = uniqueness_grid(sys, res, depth + 10);
      CHECK(deep.size() <= shallow.size());
      CHECK(std::includes(shallow.begin(), shallow.end(), deep.begin(), deep.end(),
                          [](const Point& a, const Point& b) {
                            return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
                          }));
    }
  }
}

TEST_CASE("uniqueness box dimension uses scale-matched depth") {
  const std::vector<double> eps{1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  const auto r = box_dim_uniqueness(unit_interval(0.53), eps, 40);
  CHECK(r.table.size() == eps.size());
  for (std::size_t i = 1; i < r.table.size(); ++i) CHECK(r.table[i].count >= r.table[i - 1].count);
  CHECK(r.slope > 0.0);
  // Shallow scale-matched depths still keep points near p_0 and p_1.
  CHECK(box_dim_uniqueness(unit_interval(0.63), eps, 40).table.back().count < r.table.back().count / 4);
}
