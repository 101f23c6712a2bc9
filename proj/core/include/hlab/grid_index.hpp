#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace hlab {

/// Uniform-grid nearest-neighbour index over a fixed set of points in R^d,
/// d <= 3. Queries return exactly the brute-force minimum distance.
class GridIndex {
 public:
  static constexpr std::size_t kMaxDim = 3;

  /// `flat` is row-major with `dim` coordinates per point; it must outlive
  /// the index. `points_per_cell` tunes the cell size.
  GridIndex(std::size_t dim, std::span<const double> flat, double points_per_cell = 2.0);

  std::size_t size() const noexcept { return flat_.size() / dim_; }

  /// Distance from q to the closest indexed point.
  double nearest_distance(std::span<const double> q) const;

 private:
  std::size_t cell_of(std::size_t axis, double x) const;

  std::size_t dim_;
  std::span<const double> flat_;
  double lo_[kMaxDim] = {0, 0, 0};
  std::size_t cells_[kMaxDim] = {1, 1, 1};
  double cell_size_ = 1.0;
  std::vector<std::size_t> start_;   // CSR offsets, one per cell + 1
  std::vector<std::size_t> members_;
};

}  // namespace hlab
