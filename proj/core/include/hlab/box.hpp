#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hlab/rational.hpp"

namespace hlab {

/// Closed axis-aligned box in R^d.
class Box {
 public:
  Box(std::vector<double> lo, std::vector<double> hi);

  std::size_t dim() const noexcept { return lo_.size(); }
  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }
  std::vector<double> center() const;
  double width(std::size_t axis) const { return hi_[axis] - lo_[axis]; }

  bool contains(std::span<const double> p, double tol = 0.0) const;
  bool contains(const Box& other, double tol = 0.0) const;

  /// Box expanded by `pad` on every side.
  Box inflated(double pad) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// Euclidean distance between two boxes; 0 when they intersect.
double gap(const Box& a, const Box& b);
bool intersects(const Box& a, const Box& b);

/// Closed rational interval [lo, hi].
struct ExactInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const ExactInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  Box to_box() const;
  friend bool operator==(const ExactInterval&, const ExactInterval&) = default;
};

/// Distance between two closed intervals; 0 when they intersect.
Rational gap(const ExactInterval& a, const ExactInterval& b);
bool intersects(const ExactInterval& a, const ExactInterval& b);

}  // namespace hlab
