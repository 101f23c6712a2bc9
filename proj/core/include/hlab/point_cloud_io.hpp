#pragma once

#include <filesystem>
#include <iosfwd>

#include "hlab/metric.hpp"

namespace hlab {

/// CSV point data: optional header `# dim=<d> resolution=<eps>`, then one
/// point per row as d comma-separated decimals. Values are written with 17
/// significant digits so a write/read round trip is lossless.
void write_csv(std::ostream& out, const PointCloud& cloud);
void write_csv(const std::filesystem::path& path, const PointCloud& cloud);

/// Throws SpecError("line N", ...) on malformed rows.
PointCloud read_csv(std::istream& in);
PointCloud read_csv(const std::filesystem::path& path);

}  // namespace hlab
