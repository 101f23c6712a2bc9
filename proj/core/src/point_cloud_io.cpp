#include "hlab/point_cloud_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hlab/error.hpp"

namespace hlab {
namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_field(const std::string& text, std::size_t line) {
  std::string t = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw SpecError("line " + std::to_string(line), "not a decimal number: '" + t + "'");
  }
  return value;
}

}  // namespace

void write_csv(std::ostream& out, const PointCloud& cloud) {
  out << "# dim=" << cloud.dim() << " resolution=" << format_double(cloud.resolution()) << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << format_double(p[k]);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  write_csv(out, cloud);
}

PointCloud read_csv(std::istream& in) {
  std::size_t dim = 0;
  double resolution = 0.0;
  std::vector<double> flat;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string row = trim(raw);
    if (row.empty()) continue;
    if (row.front() == '#') {
      std::istringstream header(row.substr(1));
      std::string token;
      while (header >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key == "dim") {
          double d = parse_field(value, line);
          if (d < 1 || d != static_cast<double>(static_cast<std::size_t>(d))) {
            throw SpecError("line " + std::to_string(line), "dim must be a positive integer");
          }
          dim = static_cast<std::size_t>(d);
        } else if (key == "resolution") {
          resolution = parse_field(value, line);
        }
      }
      continue;
    }
    std::vector<double> coords;
    std::size_t start = 0;
    while (true) {
      auto comma = row.find(',', start);
      coords.push_back(parse_field(row.substr(start, comma - start), line));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (dim == 0) dim = coords.size();
    if (coords.size() != dim) {
      throw SpecError("line " + std::to_string(line),
                      "expected " + std::to_string(dim) + " fields, got " + std::to_string(coords.size()));
    }
    flat.insert(flat.end(), coords.begin(), coords.end());
  }
  if (flat.empty()) throw SpecError("", "point cloud CSV contains no points");
  try {
    return PointCloud(dim, std::move(flat), resolution);
  } catch (const InvalidArgument& e) {
    throw SpecError("", e.what());
  }
}

PointCloud read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  return read_csv(in);
}

}  // namespace hlab
