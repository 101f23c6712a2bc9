#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hlab/box.hpp"
#include "hlab/metric.hpp"
#include "hlab/rational.hpp"

namespace hlab {

/// Affine self-map x ↦ Mx + b of R^d with a certified Lipschitz bound.
///
/// The constructor checks 0 <= lip_bound < 1 and that the operator norm of
/// M, estimated by power iteration, does not exceed lip_bound + 1e-12. An
/// optional lower bi-Lipschitz constant l must satisfy 0 < l <= lip_bound
/// and l <= σ_min(M) + 1e-12.
class AffineContraction {
 public:
  AffineContraction(std::size_t dim, std::vector<double> matrix, std::vector<double> offset, double lip_bound,
                    std::optional<double> bilip_lower = std::nullopt);

  /// id_X, with Lipschitz bound 1 (exempt from the contraction check).
  static AffineContraction identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  /// Row-major d×d entries.
  std::span<const double> matrix() const noexcept { return matrix_; }
  std::span<const double> offset() const noexcept { return offset_; }
  double entry(std::size_t row, std::size_t col) const { return matrix_[row * dim_ + col]; }
  double lip_bound() const noexcept { return lip_; }
  std::optional<double> bilip_lower() const noexcept { return bilip_; }

  void apply(std::span<const double> x, std::span<double> out) const;
  Point operator()(const Point& x) const;

  /// Enclosure of the image of `box`, widened outward by a floating-point
  /// error bound so it always contains the exact image.
  Box image(const Box& box) const;

  friend AffineContraction compose(const AffineContraction& outer, const AffineContraction& inner);

 private:
  struct Unchecked {};
  AffineContraction(Unchecked, std::size_t dim, std::vector<double> matrix, std::vector<double> offset, double lip,
                    std::optional<double> bilip);

  std::size_t dim_;
  std::vector<double> matrix_;
  std::vector<double> offset_;
  double lip_;
  std::optional<double> bilip_;
};

/// outer ∘ inner; Lipschitz (and bi-Lipschitz) bounds multiply.
AffineContraction compose(const AffineContraction& outer, const AffineContraction& inner);

/// Power-iteration estimate of the spectral norm of a row-major d×d matrix.
double operator_norm_estimate(std::size_t dim, std::span<const double> matrix);

/// Smallest singular value of a row-major d×d matrix.
double min_singular_value(std::size_t dim, std::span<const double> matrix);

/// Image cloud f(A); its resolution is lip_bound × A.resolution.
PointCloud apply_map(const AffineContraction& f, const PointCloud& a);

/// Exact 1-D affine map x ↦ slope·x + intercept over the rationals.
struct ExactAffine1D {
  Rational slope;
  Rational intercept;

  Rational operator()(const Rational& x) const { return slope * x + intercept; }
  ExactInterval image(const ExactInterval& interval) const;
  Rational lip() const { return abs(slope); }
  /// Unique solution of x = slope·x + intercept; requires slope != 1.
  Rational fixed_point() const;

  friend bool operator==(const ExactAffine1D&, const ExactAffine1D&) = default;
};

ExactAffine1D compose(const ExactAffine1D& outer, const ExactAffine1D& inner);

}  // namespace hlab
