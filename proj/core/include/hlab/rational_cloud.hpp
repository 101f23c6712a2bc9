#pragma once

#include <cstddef>
#include <vector>

#include "hlab/affine.hpp"
#include "hlab/metric.hpp"
#include "hlab/rational.hpp"

namespace hlab {

/// Nonempty finite subset of Q, kept sorted and duplicate free. The exact
/// counterpart of a 1-D PointCloud.
class RationalCloud {
 public:
  explicit RationalCloud(std::vector<Rational> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& min() const { return values_.front(); }
  const Rational& max() const { return values_.back(); }
  bool contains(const Rational& x) const;

  /// Rounded to the nearest doubles; resolution 0.
  PointCloud to_cloud() const;

  friend bool operator==(const RationalCloud&, const RationalCloud&) = default;

 private:
  std::vector<Rational> values_;
};

/// sup_{x∈A} inf_{y∈B} |x − y|, by a merge walk over the sorted values.
Rational directed_set_dist(const RationalCloud& a, const RationalCloud& b);
Rational hausdorff_dist(const RationalCloud& a, const RationalCloud& b);
Rational min_set_dist(const RationalCloud& a, const RationalCloud& b);
Rational diameter(const RationalCloud& a);

RationalCloud apply_map(const ExactAffine1D& f, const RationalCloud& a);

}  // namespace hlab
