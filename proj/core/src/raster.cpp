#include "hlab/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include <png.h>

#include "hlab/error.hpp"

namespace hlab {

Raster rasterize(const PointCloud& cloud, const Box& box, std::size_t width) {
  if (cloud.dim() != 2 || box.dim() != 2) throw InvalidArgument("rasterizing needs a 2-D cloud and box");
  if (width == 0) throw InvalidArgument("image width must be >= 1");
  const double bw = box.width(0);
  const double bh = box.width(1);
  std::size_t height = width;
  if (bw > 0.0) height = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(width * bh / bw)));
  Raster r{width, height, std::vector<std::uint8_t>(width * height, 255)};
  auto to_pixel = [](double t, std::size_t n) {
    double p = std::floor(t * static_cast<double>(n));
    return static_cast<std::size_t>(std::clamp(p, 0.0, static_cast<double>(n - 1)));
  };
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double tx = bw > 0.0 ? (cloud[i][0] - box.lo()[0]) / bw : 0.5;
    double ty = bh > 0.0 ? (cloud[i][1] - box.lo()[1]) / bh : 0.5;
    std::size_t px = to_pixel(tx, width);
    std::size_t py = height - 1 - to_pixel(ty, height);
    r.pixels[py * width + px] = 0;
  }
  return r;
}

void write_png(const std::filesystem::path& path, const Raster& raster) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.string().c_str(), "wb"), &std::fclose);
  if (!file) throw Error("cannot open " + path.string() + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("writing " + path.string() + " failed");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width), static_cast<png_uint_32>(raster.height), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < raster.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(raster.pixels.data() + y * raster.width));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace hlab
