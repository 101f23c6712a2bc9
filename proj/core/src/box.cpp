#include "hlab/box.hpp"

#include <algorithm>
#include <cmath>

#include "hlab/error.hpp"

namespace hlab {

Box::Box(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty()) throw InvalidArgument("box dimension must be >= 1");
  if (lo_.size() != hi_.size()) throw DimensionMismatch(lo_.size(), hi_.size());
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (!std::isfinite(lo_[k]) || !std::isfinite(hi_[k]) || lo_[k] > hi_[k]) {
      throw InvalidArgument("box bounds must be finite with lo <= hi");
    }
  }
}

std::vector<double> Box::center() const {
  std::vector<double> c(dim());
  for (std::size_t k = 0; k < dim(); ++k) c[k] = lo_[k] + (hi_[k] - lo_[k]) / 2.0;
  return c;
}

bool Box::contains(std::span<const double> p, double tol) const {
  if (p.size() != dim()) throw DimensionMismatch(p.size(), dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (p[k] < lo_[k] - tol || p[k] > hi_[k] + tol) return false;
  }
  return true;
}

bool Box::contains(const Box& other, double tol) const {
  if (other.dim() != dim()) throw DimensionMismatch(other.dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (other.lo_[k] < lo_[k] - tol || other.hi_[k] > hi_[k] + tol) return false;
  }
  return true;
}

Box Box::inflated(double pad) const {
  std::vector<double> lo = lo_;
  std::vector<double> hi = hi_;
  for (std::size_t k = 0; k < dim(); ++k) {
    lo[k] -= pad;
    hi[k] += pad;
  }
  return Box(std::move(lo), std::move(hi));
}

double gap(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  double sq = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    double g = std::max({0.0, b.lo()[k] - a.hi()[k], a.lo()[k] - b.hi()[k]});
    sq += g * g;
  }
  return std::sqrt(sq);
}

bool intersects(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (b.lo()[k] > a.hi()[k] || a.lo()[k] > b.hi()[k]) return false;
  }
  return true;
}

Box ExactInterval::to_box() const { return Box({to_double(lo)}, {to_double(hi)}); }

Rational gap(const ExactInterval& a, const ExactInterval& b) {
  if (b.lo > a.hi) return b.lo - a.hi;
  if (a.lo > b.hi) return a.lo - b.hi;
  return Rational(0);
}

bool intersects(const ExactInterval& a, const ExactInterval& b) { return !(b.lo > a.hi || a.lo > b.hi); }

}  // namespace hlab
