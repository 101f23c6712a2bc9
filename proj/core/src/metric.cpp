#include "hlab/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "hlab/error.hpp"
#include "hlab/grid_index.hpp"
#include "hlab/parallel.hpp"

namespace hlab {
namespace {

double squared_dist(const double* p, const double* q, std::size_t dim) {
  double sq = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    double diff = p[k] - q[k];
    sq += diff * diff;
  }
  return sq;
}

void require_finite(std::span<const double> coords) {
  for (double x : coords) {
    if (!std::isfinite(x)) throw InvalidArgument("point coordinates must be finite");
  }
}

bool lex_less(const double* a, const double* b, std::size_t dim) {
  return std::lexicographical_compare(a, a + dim, b, b + dim);
}

using CellKey = std::array<std::int64_t, GridIndex::kMaxDim>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : key) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Greedy net over `coords` (already in the desired order): a point is
// dropped when some kept point lies within `radius`. Returns kept indices.
std::vector<std::size_t> greedy_net(std::size_t dim, std::span<const double> coords, double radius) {
  const std::size_t n = coords.size() / dim;
  std::vector<std::size_t> kept;
  if (n == 0) return kept;
  if (radius <= 0.0) {
    kept.push_back(0);
    for (std::size_t i = 1; i < n; ++i) {
      if (!std::equal(&coords[i * dim], &coords[i * dim] + dim, &coords[kept.back() * dim])) {
        kept.push_back(i);
      }
    }
    return kept;
  }

  const double radius_sq = radius * radius;
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], coords[i * dim + k]);
      hi[k] = std::max(hi[k], coords[i * dim + k]);
    }
  }
  // Cells twice the radius wide: two points within `radius` always land in
  // neighbouring cells, even after rounding.
  const double cell = 2.0 * radius;
  bool grid_ok = dim <= GridIndex::kMaxDim;
  for (std::size_t k = 0; k < dim && grid_ok; ++k) grid_ok = (hi[k] - lo[k]) / cell < 1e15;

  if (!grid_ok) {
    for (std::size_t i = 0; i < n; ++i) {
      bool covered = false;
      for (std::size_t j : kept) {
        if (squared_dist(&coords[i * dim], &coords[j * dim], dim) <= radius_sq) {
          covered = true;
          break;
        }
      }
      if (!covered) kept.push_back(i);
    }
    return kept;
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  // Kept points of a cell form a chain through `next`, headed in `cells`.
  std::unordered_map<CellKey, std::size_t, CellKeyHash> cells;
  std::vector<std::size_t> next;
  for (std::size_t i = 0; i < n; ++i) {
    CellKey key{0, 0, 0};
    for (std::size_t k = 0; k < dim; ++k) {
      key[k] = static_cast<std::int64_t>(std::floor((coords[i * dim + k] - lo[k]) / cell));
    }
    bool covered = false;
    CellKey probe = key;
    std::array<int, GridIndex::kMaxDim> off{-1, -1, -1};
    while (!covered) {
      for (std::size_t k = 0; k < dim; ++k) probe[k] = key[k] + off[k];
      if (auto it = cells.find(probe); it != cells.end()) {
        for (std::size_t slot = it->second; slot != kNone; slot = next[slot]) {
          if (squared_dist(&coords[i * dim], &coords[kept[slot] * dim], dim) <= radius_sq) {
            covered = true;
            break;
          }
        }
      }
      std::size_t k = 0;
      for (; k < dim; ++k) {
        if (++off[k] <= 1) break;
        off[k] = -1;
      }
      if (k == dim) break;
    }
    if (!covered) {
      auto it = cells.try_emplace(key, kNone).first;
      next.push_back(it->second);
      it->second = kept.size();
      kept.push_back(i);
    }
  }
  return kept;
}

// Directed sup-inf or plain inf-inf over two clouds; brute force below the
// grid threshold.
template <bool kSupInf>
double set_distance(const PointCloud& a, const PointCloud& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  const std::size_t dim = a.dim();
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const double* bp = b.flat().data();

  const bool use_grid = nb > kGridThreshold && dim <= GridIndex::kMaxDim;
  std::optional<GridIndex> index;
  if (use_grid) index.emplace(dim, b.flat());

  std::vector<double> partial(worker_count() + 1,
                              kSupInf ? 0.0 : std::numeric_limits<double>::infinity());
  parallel_chunks(na, 256, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    double acc = kSupInf ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = begin; i < end; ++i) {
      const double* p = a.flat().data() + i * dim;
      double nearest_sq;
      if (index) {
        double d = index->nearest_distance({p, dim});
        nearest_sq = d * d;
      } else {
        nearest_sq = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nb; ++j) {
          nearest_sq = std::min(nearest_sq, squared_dist(p, bp + j * dim, dim));
          // Once the running minimum is below the current sup it cannot raise it.
          if (kSupInf && nearest_sq <= acc) break;
        }
      }
      acc = kSupInf ? std::max(acc, nearest_sq) : std::min(acc, nearest_sq);
    }
    partial[chunk] = acc;
  });
  double result = partial[0];
  for (double v : partial) result = kSupInf ? std::max(result, v) : std::min(result, v);
  // sqrt(fl(d*d)) == d in binary floating point, so grid and brute-force
  // paths agree bit for bit.
  return std::sqrt(result);
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("point dimension must be >= 1");
  require_finite(coords_);
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

double point_dist(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionMismatch(p.size(), q.size());
  return std::sqrt(squared_dist(p.data(), q.data(), p.size()));
}

double point_dist(const Point& p, const Point& q) { return point_dist(p.coords(), q.coords()); }

PointCloud::PointCloud(std::vector<Point> points, double resolution) {
  if (points.empty()) throw InvalidArgument("point cloud must be nonempty");
  std::size_t dim = points.front().dim();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.dim() != dim) throw DimensionMismatch(p.dim(), dim);
    flat.insert(flat.end(), p.coords().begin(), p.coords().end());
  }
  *this = PointCloud(dim, std::move(flat), resolution);
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> flat_coords, double resolution)
    : dim_(dim), resolution_(resolution) {
  if (dim == 0) throw InvalidArgument("point dimension must be >= 1");
  if (flat_coords.empty()) throw InvalidArgument("point cloud must be nonempty");
  if (flat_coords.size() % dim != 0) throw InvalidArgument("coordinate count is not a multiple of dim");
  if (!(resolution >= 0.0) || !std::isfinite(resolution)) throw InvalidArgument("resolution must be finite and >= 0");
  require_finite(flat_coords);

  const std::size_t n = flat_coords.size() / dim;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return lex_less(&flat_coords[i * dim], &flat_coords[j * dim], dim);
  });
  std::vector<double> sorted(flat_coords.size());
  for (std::size_t r = 0; r < n; ++r) {
    std::copy_n(&flat_coords[order[r] * dim], dim, &sorted[r * dim]);
  }
  auto kept = greedy_net(dim, sorted, resolution / 2.0);
  coords_.reserve(kept.size() * dim);
  for (std::size_t i : kept) coords_.insert(coords_.end(), &sorted[i * dim], &sorted[i * dim] + dim);
}

PointCloud::PointCloud(Canonical, std::size_t dim, std::vector<double> sorted_coords, double resolution)
    : dim_(dim), coords_(std::move(sorted_coords)), resolution_(resolution) {}

Point PointCloud::point(std::size_t i) const {
  auto c = (*this)[i];
  return Point(std::vector<double>(c.begin(), c.end()));
}

std::vector<Point> PointCloud::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

bool PointCloud::contains(std::span<const double> p) const {
  if (p.size() != dim_) throw DimensionMismatch(p.size(), dim_);
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (lex_less(coords_.data() + mid * dim_, p.data(), dim_)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::equal(p.begin(), p.end(), coords_.data() + lo * dim_);
}

double directed_set_dist(const PointCloud& a, const PointCloud& b) { return set_distance<true>(a, b); }

double hausdorff_dist(const PointCloud& a, const PointCloud& b) {
  return std::max(directed_set_dist(a, b), directed_set_dist(b, a));
}

double min_set_dist(const PointCloud& a, const PointCloud& b) { return set_distance<false>(a, b); }

double diameter(const PointCloud& a) {
  const std::size_t n = a.size();
  const std::size_t dim = a.dim();
  if (n == 1) return 0.0;
  if (dim == 1) return a[n - 1][0] - a[0][0];

  std::vector<std::size_t> candidates;
  if (dim == 2) {
    // Monotone-chain hull over the (already lexicographic) points; the
    // diametral pair is attained at hull vertices. Collinear points are kept.
    auto cross = [&](std::size_t o, std::size_t p, std::size_t q) {
      return (a[p][0] - a[o][0]) * (a[q][1] - a[o][1]) - (a[p][1] - a[o][1]) * (a[q][0] - a[o][0]);
    };
    std::vector<std::size_t> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) < 0.0) --k;
      hull[k++] = i;
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(hull[k - 2], hull[k - 1], i) < 0.0) --k;
      hull[k++] = i;
    }
    hull.resize(k);
    std::sort(hull.begin(), hull.end());
    hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
    candidates = std::move(hull);
  } else {
    candidates.resize(n);
    std::iota(candidates.begin(), candidates.end(), 0);
  }

  const std::size_t m = candidates.size();
  std::vector<double> partial(worker_count() + 1, 0.0);
  parallel_chunks(m, 64, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    double best = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        best = std::max(best, squared_dist(a[candidates[i]].data(), a[candidates[j]].data(), dim));
      }
    }
    partial[chunk] = best;
  });
  return std::sqrt(*std::max_element(partial.begin(), partial.end()));
}

PointCloud epsilon_prune(const PointCloud& a, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be finite and >= 0");
  double resolution = std::max(a.resolution(), eps);
  if (eps == 0.0) return PointCloud(PointCloud::Canonical{}, a.dim(), a.coords_, resolution);
  auto kept = greedy_net(a.dim(), a.flat(), eps);
  std::vector<double> coords;
  coords.reserve(kept.size() * a.dim());
  for (std::size_t i : kept) {
    auto p = a[i];
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(PointCloud::Canonical{}, a.dim(), std::move(coords), resolution);
}

}  // namespace hlab
