#include "hlab/grid_index.hpp"

#include <algorithm>
#include <cmath>

#include "hlab/error.hpp"

namespace hlab {

GridIndex::GridIndex(std::size_t dim, std::span<const double> flat, double points_per_cell)
    : dim_(dim), flat_(flat) {
  if (dim == 0 || dim > kMaxDim) throw InvalidArgument("GridIndex supports 1 <= dim <= 3");
  if (flat.empty() || flat.size() % dim != 0) throw InvalidArgument("GridIndex needs a nonempty point set");
  const std::size_t n = size();

  double hi[kMaxDim] = {0, 0, 0};
  for (std::size_t k = 0; k < dim_; ++k) lo_[k] = hi[k] = flat_[k];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      lo_[k] = std::min(lo_[k], flat_[i * dim_ + k]);
      hi[k] = std::max(hi[k], flat_[i * dim_ + k]);
    }
  }
  double max_extent = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) max_extent = std::max(max_extent, hi[k] - lo_[k]);

  double target_cells = std::max(1.0, static_cast<double>(n) / std::max(points_per_cell, 1e-3));
  double per_axis = std::max(1.0, std::ceil(std::pow(target_cells, 1.0 / static_cast<double>(dim_))));
  cell_size_ = max_extent > 0.0 ? max_extent / per_axis : 1.0;
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim_; ++k) {
    cells_[k] = static_cast<std::size_t>(std::floor((hi[k] - lo_[k]) / cell_size_)) + 1;
    total *= cells_[k];
  }

  auto linear = [&](std::size_t i) {
    std::size_t id = 0;
    for (std::size_t k = dim_; k-- > 0;) id = id * cells_[k] + cell_of(k, flat_[i * dim_ + k]);
    return id;
  };
  start_.assign(total + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++start_[linear(i) + 1];
  for (std::size_t c = 0; c < total; ++c) start_[c + 1] += start_[c];
  members_.resize(n);
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) members_[fill[linear(i)]++] = i;
}

std::size_t GridIndex::cell_of(std::size_t axis, double x) const {
  double t = std::floor((x - lo_[axis]) / cell_size_);
  if (!(t > 0.0)) return 0;
  auto idx = static_cast<std::size_t>(std::min(t, static_cast<double>(cells_[axis] - 1)));
  return idx;
}

double GridIndex::nearest_distance(std::span<const double> q) const {
  if (q.size() != dim_) throw DimensionMismatch(q.size(), dim_);
  std::size_t center[kMaxDim] = {0, 0, 0};
  std::size_t max_ring = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    center[k] = cell_of(k, q[k]);
    max_ring = std::max({max_ring, center[k], cells_[k] - 1 - center[k]});
  }

  double best_sq = std::numeric_limits<double>::infinity();
  auto scan_cell = [&](std::size_t id) {
    for (std::size_t m = start_[id]; m < start_[id + 1]; ++m) {
      const double* p = flat_.data() + members_[m] * dim_;
      double sq = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        double diff = p[k] - q[k];
        sq += diff * diff;
      }
      best_sq = std::min(best_sq, sq);
    }
  };

  for (std::size_t ring = 0; ring <= max_ring; ++ring) {
    long lo[kMaxDim] = {0, 0, 0};
    long hi[kMaxDim] = {0, 0, 0};
    for (std::size_t k = 0; k < dim_; ++k) {
      lo[k] = std::max(0L, static_cast<long>(center[k]) - static_cast<long>(ring));
      hi[k] = std::min(static_cast<long>(cells_[k]) - 1, static_cast<long>(center[k] + ring));
    }
    long idx[kMaxDim] = {lo[0], dim_ > 1 ? lo[1] : 0, dim_ > 2 ? lo[2] : 0};
    while (true) {
      std::size_t cheb = 0;
      std::size_t id = 0;
      for (std::size_t k = dim_; k-- > 0;) {
        auto off = static_cast<std::size_t>(std::labs(idx[k] - static_cast<long>(center[k])));
        cheb = std::max(cheb, off);
        id = id * cells_[k] + static_cast<std::size_t>(idx[k]);
      }
      if (cheb == ring) scan_cell(id);
      std::size_t k = 0;
      for (; k < dim_; ++k) {
        if (++idx[k] <= hi[k]) break;
        idx[k] = lo[k];
      }
      if (k == dim_) break;
    }
    // Rounding can shift a point into a neighbouring cell, so unvisited
    // points are only guaranteed to be (ring - 1) cells away.
    if (ring >= 1) {
      double reach = static_cast<double>(ring - 1) * cell_size_;
      if (best_sq <= reach * reach) break;
    }
  }
  return std::sqrt(best_sq);
}

}  // namespace hlab
