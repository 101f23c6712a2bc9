#include "hlab/affine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hlab/error.hpp"

namespace hlab {
namespace {

constexpr double kNormSlack = 1e-12;

Eigen::MatrixXd to_eigen(std::size_t dim, std::span<const double> matrix) {
  Eigen::MatrixXd m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = matrix[r * dim + c];
  }
  return m;
}

}  // namespace

double operator_norm_estimate(std::size_t dim, std::span<const double> matrix) {
  if (matrix.size() != dim * dim) throw InvalidArgument("matrix must have d*d entries");
  if (dim == 1) return std::abs(matrix[0]);
  Eigen::MatrixXd m = to_eigen(dim, matrix);
  Eigen::MatrixXd gram = m.transpose() * m;
  // A fixed, generic start vector keeps the estimate deterministic.
  Eigen::VectorXd v(dim);
  for (std::size_t k = 0; k < dim; ++k) v(static_cast<Eigen::Index>(k)) = 1.0 / static_cast<double>(k + 1) + 0.1;
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Eigen::VectorXd w = gram * v;
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    double next = v.dot(w);
    v = w / norm;
    if (std::abs(next - lambda) <= 1e-16 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

double min_singular_value(std::size_t dim, std::span<const double> matrix) {
  if (matrix.size() != dim * dim) throw InvalidArgument("matrix must have d*d entries");
  if (dim == 1) return std::abs(matrix[0]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(dim, matrix));
  return svd.singularValues().minCoeff();
}

AffineContraction::AffineContraction(std::size_t dim, std::vector<double> matrix, std::vector<double> offset,
                                     double lip_bound, std::optional<double> bilip_lower)
    : dim_(dim), matrix_(std::move(matrix)), offset_(std::move(offset)), lip_(lip_bound), bilip_(bilip_lower) {
  if (dim_ == 0) throw InvalidArgument("map dimension must be >= 1");
  if (matrix_.size() != dim_ * dim_) throw InvalidArgument("matrix must be d x d");
  if (offset_.size() != dim_) throw DimensionMismatch(offset_.size(), dim_);
  for (double x : matrix_) {
    if (!std::isfinite(x)) throw InvalidArgument("matrix entries must be finite");
  }
  for (double x : offset_) {
    if (!std::isfinite(x)) throw InvalidArgument("offset entries must be finite");
  }
  if (!(lip_ >= 0.0 && lip_ < 1.0)) throw InvalidArgument("lip bound must satisfy 0 <= lip < 1");

  double frobenius = 0.0;
  for (double x : matrix_) frobenius += x * x;
  frobenius = std::sqrt(frobenius);
  if (frobenius > lip_ + kNormSlack) {
    double norm = operator_norm_estimate(dim_, matrix_);
    if (norm > lip_ + kNormSlack) {
      throw InvalidArgument("operator norm " + std::to_string(norm) + " exceeds declared lip " + std::to_string(lip_));
    }
  }
  if (bilip_) {
    if (!(*bilip_ > 0.0 && *bilip_ <= lip_)) throw InvalidArgument("bilip_lower must satisfy 0 < l <= lip");
    if (*bilip_ > min_singular_value(dim_, matrix_) + kNormSlack) {
      throw InvalidArgument("bilip_lower exceeds the smallest singular value of the matrix");
    }
  }
}

AffineContraction::AffineContraction(Unchecked, std::size_t dim, std::vector<double> matrix,
                                     std::vector<double> offset, double lip, std::optional<double> bilip)
    : dim_(dim), matrix_(std::move(matrix)), offset_(std::move(offset)), lip_(lip), bilip_(bilip) {}

AffineContraction AffineContraction::identity(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("map dimension must be >= 1");
  std::vector<double> m(dim * dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) m[k * dim + k] = 1.0;
  return AffineContraction(Unchecked{}, dim, std::move(m), std::vector<double>(dim, 0.0), 1.0, 1.0);
}

void AffineContraction::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dim_) throw DimensionMismatch(x.size(), dim_);
  if (out.size() != dim_) throw DimensionMismatch(out.size(), dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    double acc = offset_[r];
    for (std::size_t c = 0; c < dim_; ++c) acc += matrix_[r * dim_ + c] * x[c];
    out[r] = acc;
  }
}

Point AffineContraction::operator()(const Point& x) const {
  std::vector<double> out(dim_);
  apply(x.coords(), out);
  return Point(std::move(out));
}

Box AffineContraction::image(const Box& box) const {
  if (box.dim() != dim_) throw DimensionMismatch(box.dim(), dim_);
  constexpr double kUnit = std::numeric_limits<double>::epsilon();
  const double gamma = static_cast<double>(dim_ + 2) * kUnit;
  std::vector<double> lo(dim_);
  std::vector<double> hi(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    double l = offset_[r];
    double h = offset_[r];
    double magnitude = std::abs(offset_[r]);
    for (std::size_t c = 0; c < dim_; ++c) {
      double a = matrix_[r * dim_ + c] * box.lo()[c];
      double b = matrix_[r * dim_ + c] * box.hi()[c];
      l += std::min(a, b);
      h += std::max(a, b);
      magnitude += std::max(std::abs(a), std::abs(b));
    }
    double pad = gamma * magnitude + std::numeric_limits<double>::denorm_min();
    lo[r] = l - pad;
    hi[r] = h + pad;
  }
  return Box(std::move(lo), std::move(hi));
}

AffineContraction compose(const AffineContraction& outer, const AffineContraction& inner) {
  if (outer.dim_ != inner.dim_) throw DimensionMismatch(outer.dim_, inner.dim_);
  const std::size_t d = outer.dim_;
  std::vector<double> m(d * d, 0.0);
  std::vector<double> b(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    double acc = outer.offset_[r];
    for (std::size_t k = 0; k < d; ++k) {
      double o = outer.matrix_[r * d + k];
      acc += o * inner.offset_[k];
      for (std::size_t c = 0; c < d; ++c) m[r * d + c] += o * inner.matrix_[k * d + c];
    }
    b[r] = acc;
  }
  std::optional<double> bilip;
  if (outer.bilip_ && inner.bilip_) bilip = *outer.bilip_ * *inner.bilip_;
  return AffineContraction(AffineContraction::Unchecked{}, d, std::move(m), std::move(b),
                           outer.lip_ * inner.lip_, bilip);
}

PointCloud apply_map(const AffineContraction& f, const PointCloud& a) {
  if (f.dim() != a.dim()) throw DimensionMismatch(f.dim(), a.dim());
  const std::size_t d = a.dim();
  std::vector<double> out(a.size() * d);
  for (std::size_t i = 0; i < a.size(); ++i) f.apply(a[i], {out.data() + i * d, d});
  return PointCloud(d, std::move(out), f.lip_bound() * a.resolution());
}

ExactInterval ExactAffine1D::image(const ExactInterval& interval) const {
  Rational a = (*this)(interval.lo);
  Rational b = (*this)(interval.hi);
  if (a <= b) return {std::move(a), std::move(b)};
  return {std::move(b), std::move(a)};
}

Rational ExactAffine1D::fixed_point() const {
  if (slope == 1) throw InvalidArgument("map with slope 1 has no unique fixed point");
  return intercept / (Rational(1) - slope);
}

ExactAffine1D compose(const ExactAffine1D& outer, const ExactAffine1D& inner) {
  return {outer.slope * inner.slope, outer.slope * inner.intercept + outer.intercept};
}

}  // namespace hlab
