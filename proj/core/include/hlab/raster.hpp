#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "hlab/box.hpp"
#include "hlab/metric.hpp"

namespace hlab {

/// 8-bit grayscale image, row 0 at the top.
struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// White canvas with one black pixel per point, mapping the box onto the
/// image rectangle (y pointing up). Height follows the box aspect ratio.
/// Throws InvalidArgument unless the cloud and box are 2-D and width >= 1.
Raster rasterize(const PointCloud& cloud, const Box& box, std::size_t width);

void write_png(const std::filesystem::path& path, const Raster& raster);

}  // namespace hlab
