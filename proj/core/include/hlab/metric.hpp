#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hlab {

/// A point of R^d with finite coordinates, d >= 1.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t k) const { return coords_[k]; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Euclidean distance. Throws DimensionMismatch.
double point_dist(const Point& p, const Point& q);
double point_dist(std::span<const double> p, std::span<const double> q);

/// Nonempty finite point set in R^d standing in for a compact set, with
/// the resolution (epsilon of the net) it was built at.
///
/// Points are kept in lexicographic order. On construction, points closer
/// than resolution/2 to an earlier kept point are collapsed (exact
/// duplicates when resolution is 0), so iteration order and contents are
/// a deterministic function of the input multiset.
class PointCloud {
 public:
  PointCloud(std::vector<Point> points, double resolution = 0.0);
  PointCloud(std::size_t dim, std::vector<double> flat_coords, double resolution = 0.0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  double resolution() const noexcept { return resolution_; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  Point point(std::size_t i) const;
  std::vector<Point> points() const;

  /// Row-major coordinates, size() * dim() entries.
  std::span<const double> flat() const noexcept { return coords_; }

  /// Membership of an exact coordinate tuple (binary search).
  bool contains(std::span<const double> p) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  struct Canonical {};
  PointCloud(Canonical, std::size_t dim, std::vector<double> sorted_coords, double resolution);
  friend PointCloud epsilon_prune(const PointCloud& a, double eps);

  std::size_t dim_ = 0;
  std::vector<double> coords_;
  double resolution_ = 0.0;
};

/// Directed distance sup_{x in A} inf_{y in B} d(x, y).
double directed_set_dist(const PointCloud& a, const PointCloud& b);

/// Hausdorff-Pompeiu distance max{d(A,B), d(B,A)}.
double hausdorff_dist(const PointCloud& a, const PointCloud& b);

/// Smallest distance between a point of A and a point of B.
double min_set_dist(const PointCloud& a, const PointCloud& b);

/// Largest pairwise distance; 0 for a singleton.
double diameter(const PointCloud& a);

/// Greedy eps-net of A over its lexicographic order: a point is kept unless
/// it lies within eps of an already kept point. The result is a subset of A
/// with hausdorff_dist(A, result) <= eps and resolution max(A.resolution, eps).
PointCloud epsilon_prune(const PointCloud& a, double eps);

/// Clouds above this size are searched through a uniform grid instead of
/// brute force. Results are identical either way.
inline constexpr std::size_t kGridThreshold = 10'000;

}  // namespace hlab
