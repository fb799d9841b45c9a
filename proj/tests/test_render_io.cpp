#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ifsaddr/deleted_digits.hpp"
#include "ifsaddr/error.hpp"
#include "ifsaddr/io.hpp"
#include "ifsaddr/render.hpp"
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

IfsSystem triangle(double lambda) { return IfsSystem(lambda, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}); }

}  // namespace

TEST_CASE("PGM layout") {
  GrayImage img;
  img.width = 3;
  img.height = 2;
  img.pixels = {0, 255, 255, 255, 0, 255};
  std::ostringstream out;
  write_pgm(out, img);
  std::istringstream in(out.str());
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(maxval == 255);
  std::vector<int> px;
  for (int v; in >> v;) px.push_back(v);
  CHECK(px == std::vector<int>{0, 255, 255, 255, 0, 255});
  CHECK(img.occupied() == 2);
}

TEST_CASE("rasterize puts row 0 at the top and clamps the upper edge") {
  const BoundingBox box{{0.0, 0.0}, {1.0, 1.0}};
  const auto img = rasterize({{0.0, 1.0}, {1.0, 0.0}}, box, 4);
  CHECK(img.width == 4);
  CHECK(img.height == 4);
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(3, 3) == 0);
  CHECK(img.occupied() == 2);
  const auto strip = rasterize({{0.5}}, BoundingBox{{0.0}, {1.0}}, 64);
  CHECK(strip.height == 8);
  for (std::size_t r = 0; r < strip.height; ++r) CHECK(strip.at(r, 32) == 0);
}

TEST_CASE("gasket render occupies nearly all 3^k gasket cells and nothing else") {
  for (int k : {4, 5, 6}) {
    const int res = 1 << k;
    const auto img = render_attractor(triangle(0.5), 300000, 1000, res, 17);
    const double full = std::pow(3.0, k);
    CHECK(img.occupied() >= 0.9 * full);
    CHECK(img.occupied() <= full);
    for (int row = 0; row < res; ++row)
      for (int col = 0; col < res; ++col) {
        const int j = res - 1 - row;
        if (img.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) == 0) CHECK((col & j) == 0);
      }
  }
}

TEST_CASE("no-holes triangle renders a solid interior") {
  const int res = 48;
  const auto img = render_attractor(triangle(0.7), 400000, 1000, res, 5);
  int white = 0;
  for (int row = 0; row < res; ++row)
    for (int col = 0; col < res; ++col) {
      const int j = res - 1 - row;
      if (col + j + 2 <= res && img.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) == 255) ++white;
    }
  CHECK(white == 0);
}

TEST_CASE("Cantor strip shows the middle gap") {
  const auto sys = as_ifs(DigitSet{0.0, 1.0}, 0.45);
  const int res = 200;
  const auto img = render_attractor(sys, 200000, 1000, res, 9);
  // Omega = [0, 0.818...]; the images are [0, 0.45 hi] and [0.45, 0.818...].
  const double hi = 0.45 / 0.55;
  const double gap_lo = 0.45 * hi, gap_hi = 0.45;
  for (int col = 0; col < res; ++col) {
    const double a = hi * col / res, b = hi * (col + 1) / res;
    if (a > gap_lo && b < gap_hi) CHECK(img.at(0, static_cast<std::size_t>(col)) == 255);
  }
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(0, res - 1) == 0);
}

TEST_CASE("render argument checks") {
  CHECK(code_of([] { render_attractor(triangle(0.5), 1000, 50, 32, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { render_attractor(triangle(0.5), 100, 100, 32, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { render_attractor(triangle(0.5), 1000, 100, 0, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("render is seed deterministic") {
  const auto a = render_attractor(triangle(0.6), 20000, 200, 64, 3);
  const auto b = render_attractor(triangle(0.6), 20000, 200, 64, 3);
  CHECK(a.pixels == b.pixels);
}

TEST_CASE("IFS JSON parsing") {
  const auto f = parse_ifs_json(R"({"lambda": "7/10", "points": [[0, 0], [1, 0], [0, "1"]]})");
  CHECK(f.sys.has_exact());
  CHECK(f.sys.exact_lambda() == oracle::q(7, 10));
  CHECK(f.probs.empty());
  const auto g = parse_ifs_json(R"({"lambda": 0.7, "points": [[0], [1]], "probs": [0.25, 0.75]})");
  CHECK(g.sys.has_exact());
  CHECK(g.probs == std::vector<double>{0.25, 0.75});
  CHECK_FALSE(parse_ifs_json(R"({"lambda": 0.6180339887498949, "points": [[0], [1]]})").sys.has_exact());

  CHECK(code_of([] { parse_ifs_json(R"({"lambda": 0.7, "points": [[0], [1]], "probs": [0.3, 0.3]})"); }) ==
        ErrorCode::BadProbabilityVector);
  CHECK(code_of([] { parse_ifs_json(R"({"lambda": 0.7, "points": [[0], [1]], "probs": [1.0]})"); }) ==
        ErrorCode::BadProbabilityVector);
  CHECK(code_of([] { parse_ifs_json(R"({"lambda": 0.7, "points": [[0], [1]})"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_ifs_json(R"({"points": [[0], [1]]})"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_ifs_json(R"({"lambda": "x", "points": [[0], [1]]})"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_ifs_json(R"({"lambda": 1.5, "points": [[0], [1]]})"); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { load_ifs_file("/nonexistent/ifs.json"); }) == ErrorCode::IoError);
}

TEST_CASE("IFS file round trip") {
  const auto path = (std::filesystem::temp_directory_path() / "ifsaddr_test_ifs.json").string();
  write_file(path, R"({"lambda": "3/5", "points": [[0, 0], [1, 0], [0, 1]]})");
  const auto f = load_ifs_file(path);
  CHECK(f.sys.num_maps() == 3);
  CHECK(f.sys.exact_lambda() == oracle::q(3, 5));
  std::remove(path.c_str());
  CHECK(code_of([] { write_file("/nonexistent/dir/out.txt", "x"); }) == ErrorCode::IoError);
}

TEST_CASE("CSV formatting") {
  std::ostringstream out;
  CsvWriter csv(out, {"a", "b"});
  csv.row({format_double(0.1), format_double(1.0 / 3.0)});
  CHECK(out.str() == "a,b\n0.10000000000000001,0.33333333333333331\n");
  CHECK(code_of([&] { csv.row({"only"}); }) == ErrorCode::InvalidArgument);
  CHECK(std::stod(format_double(0.7)) == 0.7);
  CHECK(format_double(-2.5e-12).find('.') != std::string::npos);
}
