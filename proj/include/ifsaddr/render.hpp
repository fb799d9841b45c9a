#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ifsaddr/ifs.hpp"
#include "ifsaddr/polytope.hpp"

namespace ifsaddr {

/// 8-bit grayscale raster, row 0 at the top.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
  /// Number of black (occupied) pixels.
  std::size_t occupied() const;
};

/// Bins points into a resolution x resolution grid over box (first two
/// coordinates); occupied cells are 0, empty 255. A 1-D box gives a strip of
/// height max(1, resolution / 8) with identical rows. Points on the upper
/// edge fall into the last cell.
GrayImage rasterize(const std::vector<Point>& points, const BoundingBox& box, int resolution);

/// Chaos game with uniform digits, binned over the bounding box of Omega.
/// Throws InvalidArgument unless iters > burn_in >= 100 and resolution >= 1.
GrayImage render_attractor(const IfsSystem& sys, std::size_t iters, std::size_t burn_in, int resolution,
                           std::uint64_t seed);

/// ASCII "P2" with maxval 255.
void write_pgm(std::ostream& out, const GrayImage& image);

}  // namespace ifsaddr
