#include "hlab/rational_cloud.hpp"

#include <algorithm>

#include "hlab/error.hpp"

namespace hlab {

RationalCloud::RationalCloud(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("a cloud must be nonempty");
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

bool RationalCloud::contains(const Rational& x) const {
  return std::binary_search(values_.begin(), values_.end(), x);
}

PointCloud RationalCloud::to_cloud() const {
  std::vector<double> flat;
  flat.reserve(values_.size());
  for (const Rational& q : values_) flat.push_back(to_double(q));
  return PointCloud(1, std::move(flat), 0.0);
}

Rational directed_set_dist(const RationalCloud& a, const RationalCloud& b) {
  const auto& bv = b.values();
  Rational worst(0);
  std::size_t j = 0;
  for (const Rational& x : a.values()) {
    while (j + 1 < bv.size() && bv[j + 1] <= x) ++j;
    Rational best = hlab::abs(x - bv[j]);
    if (j + 1 < bv.size()) best = std::min(best, hlab::abs(bv[j + 1] - x));
    if (best > worst) worst = best;
  }
  return worst;
}

Rational hausdorff_dist(const RationalCloud& a, const RationalCloud& b) {
  return std::max(directed_set_dist(a, b), directed_set_dist(b, a));
}

Rational min_set_dist(const RationalCloud& a, const RationalCloud& b) {
  const auto& av = a.values();
  const auto& bv = b.values();
  std::size_t i = 0;
  std::size_t j = 0;
  Rational best = hlab::abs(av[0] - bv[0]);
  while (i < av.size() && j < bv.size()) {
    Rational d = hlab::abs(av[i] - bv[j]);
    if (d < best) best = d;
    if (av[i] < bv[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return best;
}

Rational diameter(const RationalCloud& a) { return a.max() - a.min(); }

RationalCloud apply_map(const ExactAffine1D& f, const RationalCloud& a) {
  std::vector<Rational> out;
  out.reserve(a.size());
  for (const Rational& x : a.values()) out.push_back(f(x));
  return RationalCloud(std::move(out));
}

}  // namespace hlab
