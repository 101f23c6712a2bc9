#include "hlab/counterexamples.hpp"

#include <numeric>

#include "hlab/affine.hpp"
#include "hlab/box.hpp"
#include "hlab/error.hpp"

namespace hlab {

IntervalSet frac_shift_set(std::int64_t n) {
  Rational inv(1, n);
  return unite(IntervalSet::closed(0, inv), IntervalSet::half_open(1 - inv, 1));
}

PropertyReport frac_shift_counterexample(std::int64_t n_max, std::int64_t m_max) {
  const std::string name = "frac-shift-counterexample";
  if (n_max < 3) throw InvalidArgument("N must be >= 3");
  if (m_max < 2) throw InvalidArgument("M must be >= 2");

  nlohmann::json witnesses = nlohmann::json::array();
  IntervalSet meet = frac_shift_set(3);
  for (std::int64_t n = 3; n <= n_max; ++n) {
    IntervalSet c = frac_shift_set(n);
    Rational shift(1, n);
    Rational x = 1 - shift;
    Rational fx = frac(x + shift);
    if (!c.contains(x) || fx != 0 || !frac_shift(c, shift).contains(0)) {
      return PropertyReport::failing(name, Witness{{"n=" + std::to_string(n)}, "0 is not in f_n(C_n)"});
    }
    witnesses.push_back({{"n", n}, {"x", to_string(x)}, {"f_n(x)", to_string(fx)}});
    meet = intersect(meet, c);
  }

  Rational inv_n(1, n_max);
  IntervalSet expected = unite(IntervalSet::closed(0, inv_n), IntervalSet::half_open(1 - inv_n, 1));
  if (!(meet == expected) || !meet.contains(0)) {
    return PropertyReport::failing(name, Witness{{meet.to_string()}, "intersection of the C_n is not as expected"});
  }
  std::vector<std::string> grid_hits;
  for (std::int64_t k = 0; k < n_max; ++k) {
    Rational g(k, n_max - 1);
    if (meet.contains(g)) grid_hits.push_back(to_string(g));
  }
  if (grid_hits != std::vector<std::string>{"0"}) {
    return PropertyReport::failing(name, Witness{grid_hits, "the intersection meets the grid outside 0"});
  }

  IntervalSet image;
  for (std::int64_t m = 2; m <= m_max; ++m) image = unite(image, frac_shift(IntervalSet::point(0), Rational(1, m)));
  std::vector<std::string> image_points;
  for (const Interval& p : image.parts()) image_points.push_back(p.to_string());
  if (image.contains(0)) {
    return PropertyReport::failing(name, Witness{{"0"}, "the image of {0} contains 0"});
  }

  Rational margin(1, m_max);
  auto r = PropertyReport::holding(name, to_double(margin));
  r.set_margin_exact(to_string(margin));
  r.set_note("0 lies in f_n(C_n) for every checked n, yet the maps send the intersection point 0 to {1/m}, "
             "which excludes 0");
  r.details()["zero_in_f_n_of_C_n"] = witnesses;
  r.details()["intersection"] = meet.to_string();
  r.details()["intersection_grid_hits"] = grid_hits;
  r.details()["image_of_zero"] = image_points;
  r.details()["image_of_zero_contains_zero"] = false;
  return r;
}

SelfMapTable frac_shift_system(std::int64_t m_max) {
  if (m_max < 2) throw InvalidArgument("M must be >= 2");
  std::int64_t l = 1;
  for (std::int64_t m = 2; m <= m_max; ++m) {
    l = std::lcm(l, m);
    if (l > 1'000'000) throw CapExceeded("grid 1/lcm(2..M) exceeds 10^6 points");
  }
  std::vector<std::string> labels;
  for (std::int64_t k = 0; k < l; ++k) labels.push_back(to_string(Rational(k, l)));
  std::vector<std::string> indices;
  std::vector<std::vector<std::size_t>> tables;
  for (std::int64_t m = 2; m <= m_max; ++m) {
    indices.push_back(std::to_string(m));
    std::vector<std::size_t> t(static_cast<std::size_t>(l));
    for (std::int64_t k = 0; k < l; ++k) t[static_cast<std::size_t>(k)] = static_cast<std::size_t>((k + l / m) % l);
    tables.push_back(std::move(t));
  }
  return SelfMapTable(FiniteUniverse(std::move(labels)), std::move(indices), std::move(tables));
}

PropertyReport dyadic_cluster_counterexample(std::int64_t m_max) {
  const std::string name = "dyadic-cluster-counterexample";
  if (m_max < 2) throw InvalidArgument("M must be >= 2");
  const ExactInterval unit{Rational(0), Rational(1)};
  std::vector<ExactInterval> images;
  nlohmann::json listed = nlohmann::json::array();
  for (std::int64_t m = 1; m <= m_max; ++m) {
    Rational scale = pow(Rational(2), -(2 * m - 1));
    ExactInterval img = ExactAffine1D{scale, scale}.image(unit);
    ExactInterval expected{pow(Rational(2), -(2 * m - 1)), pow(Rational(2), -(2 * m - 2))};
    if (!(img == expected)) {
      return PropertyReport::failing(name, Witness{{"m=" + std::to_string(m)}, "image differs from the closed form"});
    }
    listed.push_back({{"m", m}, {"image", "[" + to_string(img.lo) + ", " + to_string(img.hi) + "]"}});
    images.push_back(std::move(img));
  }
  std::optional<Rational> min_gap;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (intersects(images[i], images[j])) {
        return PropertyReport::failing(name, Witness{{std::to_string(i + 1), std::to_string(j + 1)}, "images overlap"});
      }
      Rational g = gap(images[i], images[j]);
      if (!min_gap || g < *min_gap) min_gap = g;
    }
  }
  Rational inf = images.front().lo;
  for (const ExactInterval& img : images) inf = std::min(inf, img.lo);
  bool zero_attained = false;
  for (const ExactInterval& img : images) zero_attained = zero_attained || img.contains(Rational(0));
  if (inf != pow(Rational(2), -(2 * m_max - 1)) || zero_attained) {
    return PropertyReport::failing(name, Witness{{to_string(inf)}, "infimum is not 2^-(2M-1) or 0 is attained"});
  }
  auto r = PropertyReport::holding(name, to_double(*min_gap));
  r.set_margin_exact(to_string(*min_gap));
  r.set_note("images are pairwise disjoint and accumulate at 0, which no image contains");
  r.details()["images"] = listed;
  r.details()["infimum"] = to_string(inf);
  r.details()["zero_attained"] = false;
  return r;
}

}  // namespace hlab
