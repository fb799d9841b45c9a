#include "ifsaddr/render.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ifsaddr/error.hpp"
#include "ifsaddr/measure.hpp"

namespace ifsaddr {

std::size_t GrayImage::occupied() const {
  return static_cast<std::size_t>(std::count(pixels.begin(), pixels.end(), std::uint8_t{0}));
}

namespace {

std::size_t bin(double v, double lo, double hi, std::size_t cells) {
  if (!(hi > lo)) return 0;
  const double t = std::floor((v - lo) / (hi - lo) * static_cast<double>(cells));
  if (t < 0.0) return 0;
  return std::min(static_cast<std::size_t>(t), cells - 1);
}

}  // namespace

GrayImage rasterize(const std::vector<Point>& points, const BoundingBox& box, int resolution) {
  if (resolution < 1) throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  const std::size_t r = static_cast<std::size_t>(resolution);
  const bool strip = box.lo.size() == 1;
  GrayImage img;
  img.width = r;
  img.height = strip ? std::max<std::size_t>(1, r / 8) : r;
  img.pixels.assign(img.width * img.height, 255);
  for (const auto& p : points) {
    const std::size_t col = bin(p[0], box.lo[0], box.hi[0], r);
    if (strip) {
      for (std::size_t row = 0; row < img.height; ++row) img.pixels[row * r + col] = 0;
      continue;
    }
    const std::size_t row = r - 1 - bin(p[1], box.lo[1], box.hi[1], r);
    img.pixels[row * r + col] = 0;
  }
  return img;
}

GrayImage render_attractor(const IfsSystem& sys, std::size_t iters, std::size_t burn_in, int resolution,
                           std::uint64_t seed) {
  if (burn_in < 100) throw Error(ErrorCode::InvalidArgument, "burn-in must be at least 100");
  if (iters <= burn_in) throw Error(ErrorCode::InvalidArgument, "iters must exceed burn-in");
  const auto points = chaos_game(sys, iters, burn_in, seed);
  return rasterize(points, sys.omega().bounds(), resolution);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P2\n" << image.width << ' ' << image.height << "\n255\n";
  for (std::size_t row = 0; row < image.height; ++row) {
    for (std::size_t col = 0; col < image.width; ++col) {
      if (col) out << ' ';
      out << static_cast<int>(image.at(row, col));
    }
    out << '\n';
  }
}

}  // namespace ifsaddr
