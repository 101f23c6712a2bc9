#include "hlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "hlab/error.hpp"
#include "hlab/parallel.hpp"

namespace hlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSolveTol = 1e-9;

std::string point_text(const Point& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.dim(); ++k) {
    if (k) s += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p[k]);
    s += buf;
  }
  return s + ")";
}

std::vector<Point> box_samples(const Box& box) {
  std::vector<Point> out{Point(box.center())};
  const std::size_t d = box.dim();
  if (d > 10) return out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<double> corner(d);
    for (std::size_t k = 0; k < d; ++k) corner[k] = (mask >> k) & 1 ? box.hi()[k] : box.lo()[k];
    out.emplace_back(std::move(corner));
  }
  return out;
}

// True when some x in the box (up to kSolveTol) has f(x) = p.
bool has_preimage_in_box(const AffineContraction& f, const Point& p, const Box& box) {
  const std::size_t d = f.dim();
  Eigen::MatrixXd m(d, d);
  Eigen::VectorXd rhs(d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = f.entry(r, c);
    rhs(r) = p[r] - f.offset()[r];
  }
  Eigen::VectorXd x = m.completeOrthogonalDecomposition().solve(rhs);
  std::vector<double> xv(x.data(), x.data() + d);
  if (!box.contains(xv, kSolveTol)) {
    // Minimal-norm solutions of singular systems may leave the box; a
    // constant map sends every point to its offset.
    if (f.lip_bound() == 0.0 || m.norm() == 0.0) xv = box.center();
    if (!box.contains(xv, kSolveTol)) return false;
  }
  Point image = f(Point(xv));
  return point_dist(image, p) <= kSolveTol * (1.0 + std::sqrt(std::inner_product(
                                                          p.coords().begin(), p.coords().end(),
                                                          p.coords().begin(), 0.0)));
}

std::optional<Point> find_common_point(const AffineContraction& f, const AffineContraction& g, const Box& box) {
  std::vector<Point> candidates;
  Box fi = f.image(box);
  Box gi = g.image(box);
  std::vector<double> lo(box.dim());
  std::vector<double> hi(box.dim());
  bool meet = true;
  for (std::size_t k = 0; k < box.dim(); ++k) {
    lo[k] = std::max(fi.lo()[k], gi.lo()[k]);
    hi[k] = std::min(fi.hi()[k], gi.hi()[k]);
    meet = meet && lo[k] <= hi[k];
  }
  if (meet) candidates.push_back(Point(Box(lo, hi).center()));
  for (const Point& x : box_samples(box)) {
    candidates.push_back(f(x));
    candidates.push_back(g(x));
  }
  for (const Point& p : candidates) {
    if (has_preimage_in_box(f, p, box) && has_preimage_in_box(g, p, box)) return p;
  }
  return std::nullopt;
}

bool is_prefix(const Word& a, const Word& b) {
  return a.size() <= b.size() && std::equal(a.letters().begin(), a.letters().end(), b.letters().begin());
}

}  // namespace

PropertyReport check_non_overlapping(const IifsSpec& spec, const std::optional<Box>& box_override) {
  const std::string name = "non-overlapping";
  const Box& box = box_override ? *box_override : spec.box();
  if (box.dim() != spec.dim()) throw DimensionMismatch(box.dim(), spec.dim());
  const auto& maps = spec.maps();
  if (maps.size() == 1) {
    auto r = PropertyReport::holding(name, kInf);
    r.set_note("single map: no distinct pairs");
    return r;
  }

  if (spec.is_exact()) {
    ExactInterval ebox = box_override ? ExactInterval{exact_from_double(box.lo()[0]), exact_from_double(box.hi()[0])}
                                      : *spec.exact_box();
    std::vector<ExactInterval> images;
    for (const IndexedMap& m : maps) images.push_back(m.exact->image(ebox));
    std::optional<Rational> best;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = i + 1; j < maps.size(); ++j) {
        if (intersects(images[i], images[j])) {
          Rational p = std::max(images[i].lo, images[j].lo);
          auto r = PropertyReport::failing(
              name, Witness{{maps[i].index, maps[j].index, to_string(p)},
                            "the images of the two maps share the point " + to_string(p)});
          return r;
        }
        Rational g = gap(images[i], images[j]);
        if (!best || g < *best) best = g;
      }
    }
    auto r = PropertyReport::holding(name, to_double(*best));
    r.set_margin_exact(to_string(*best));
    return r;
  }

  std::vector<Box> images;
  for (const IndexedMap& m : maps) images.push_back(m.map.image(box));
  double best = kInf;
  std::optional<std::pair<std::size_t, std::size_t>> touching;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      double g = gap(images[i], images[j]);
      if (g > 0.0) {
        best = std::min(best, g);
        continue;
      }
      if (auto p = find_common_point(maps[i].map, maps[j].map, box)) {
        return PropertyReport::failing(
            name, Witness{{maps[i].index, maps[j].index, point_text(*p)},
                          "the images of the two maps share the point " + point_text(*p)});
      }
      if (!touching) touching = std::make_pair(i, j);
    }
  }
  if (touching) {
    auto r = PropertyReport::inconclusive(
        name, 0.0,
        "image boxes of maps " + maps[touching->first].index + " and " + maps[touching->second].index +
            " meet but no common image point was found");
    return r;
  }
  return PropertyReport::holding(name, best);
}

PropertyReport check_strongly_non_overlapping(const IifsSpec& spec, std::size_t depth, std::size_t cap) {
  const std::string name = "strongly-non-overlapping";
  if (depth == 0) throw InvalidArgument("depth must be >= 1");
  const auto alphabet = spec.alphabet();
  std::size_t total = 0;
  for (std::size_t len = 1; len <= depth; ++len) {
    std::size_t n = word_count(alphabet.size(), len);
    if (n > cap || total > cap) throw CapExceeded("depth too large: word count exceeds the cap");
    total += n;
  }
  if (total > 1 && (total - 1) > 2 * cap / total) {
    throw CapExceeded("depth too large: " + std::to_string(total) + " words give more than " + std::to_string(cap) +
                      " pairs");
  }
  std::vector<Word> words;
  for (std::size_t len = 1; len <= depth; ++len) {
    auto level = all_words(alphabet, len, cap);
    words.insert(words.end(), level.begin(), level.end());
  }

  const bool exact = spec.is_exact();
  std::vector<ExactInterval> exact_images;
  std::vector<Box> images;
  for (const Word& w : words) {
    if (exact) {
      exact_images.push_back(compose_word_exact(spec, w).image(*spec.exact_box()));
    } else {
      images.push_back(image_enclosure(spec, w, spec.box()));
    }
  }

  std::size_t pairs = 0;
  double best = kInf;
  std::optional<Rational> best_exact;
  std::optional<std::pair<std::size_t, std::size_t>> touching;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      if (is_prefix(words[a], words[b]) || is_prefix(words[b], words[a])) continue;
      ++pairs;
      if (exact) {
        if (intersects(exact_images[a], exact_images[b])) {
          Rational p = std::max(exact_images[a].lo, exact_images[b].lo);
          return PropertyReport::failing(name, Witness{{words[a].literal(), words[b].literal(), to_string(p)},
                                                       "the two word images share the point " + to_string(p)});
        }
        Rational g = gap(exact_images[a], exact_images[b]);
        if (!best_exact || g < *best_exact) best_exact = g;
        continue;
      }
      double g = gap(images[a], images[b]);
      if (g > 0.0) {
        best = std::min(best, g);
        continue;
      }
      if (auto p = find_common_point(compose_word(spec, words[a]), compose_word(spec, words[b]), spec.box())) {
        return PropertyReport::failing(name, Witness{{words[a].literal(), words[b].literal(), point_text(*p)},
                                                     "the two word images share the point " + point_text(*p)});
      }
      if (!touching) touching = std::make_pair(a, b);
    }
  }

  PropertyReport r = [&] {
    if (touching) {
      return PropertyReport::inconclusive(name, 0.0,
                                          "image boxes of words " + words[touching->first].literal() + " and " +
                                              words[touching->second].literal() +
                                              " meet but no common image point was found");
    }
    if (best_exact) {
      auto h = PropertyReport::holding(name, to_double(*best_exact));
      h.set_margin_exact(to_string(*best_exact));
      return h;
    }
    return PropertyReport::holding(name, best);
  }();
  if (r.holds()) {
    r.set_note("all prefix-incomparable word pairs up to depth " + std::to_string(depth) +
               " are disjoint; deeper words are not checked");
  }
  r.details()["depth"] = depth;
  r.details()["words"] = words.size();
  r.details()["pairs"] = pairs;
  return r;
}

PropertyReport check_locally_finite(const IifsSpec& spec, double eps, std::size_t cap) {
  const std::string name = "locally-finite";
  if (!(eps > 0.0)) throw InvalidArgument("grid resolution must be > 0");

  if (const auto& family = spec.family()) {
    if (!family->tail) {
      return PropertyReport::inconclusive(name, 0.0,
                                          "the family declares no monotone image bound, so its infinitely many "
                                          "members cannot be checked");
    }
    const FamilyTail& tail = *family->tail;
    const ExactInterval& box = *spec.exact_box();
    const Rational eps_q = exact_from_double(eps);
    std::optional<Rational> previous;
    constexpr std::int64_t kMaxMembers = 100'000;
    for (std::int64_t k = 0; k < kMaxMembers; ++k) {
      std::int64_t m = family->m_start + k;
      Rational radius = tail.radius.eval(m);
      ExactInterval image = family->member(m).image(box);
      bool inside = tail.point - radius <= image.lo && image.hi <= tail.point + radius;
      if (!inside || (previous && radius > *previous)) {
        return PropertyReport::inconclusive(name, 0.0,
                                            "the declared tail bound does not hold at m=" + std::to_string(m));
      }
      previous = radius;
      if (radius <= eps_q) {
        auto r = PropertyReport::failing(
            name,
            Witness{{"y=" + to_string(tail.point)},
                    "every member m >= " + std::to_string(m) + " maps the box within " + to_string(radius) +
                        " of y, so each neighbourhood of y meets infinitely many images"});
        r.details()["m_star"] = m;
        r.details()["radius_at_m_star"] = to_string(radius);
        r.details()["members_checked"] = k + 1;
        return r;
      }
    }
    return PropertyReport::inconclusive(name, 0.0, "the declared tail radius stays above the grid resolution");
  }

  const Box& box = spec.box();
  const std::size_t d = spec.dim();
  std::map<std::vector<std::int64_t>, std::size_t> counts;
  std::size_t visits = 0;
  for (const IndexedMap& m : spec.maps()) {
    Box image = m.map.image(box);
    std::vector<std::int64_t> first(d);
    std::vector<std::int64_t> last(d);
    for (std::size_t k = 0; k < d; ++k) {
      double cells = std::floor(box.width(k) / eps);
      double lo = std::clamp(std::floor((image.lo()[k] - box.lo()[k]) / eps), 0.0, cells);
      double hi = std::clamp(std::floor((image.hi()[k] - box.lo()[k]) / eps), 0.0, cells);
      first[k] = static_cast<std::int64_t>(lo);
      last[k] = static_cast<std::int64_t>(hi);
    }
    std::vector<std::int64_t> cell = first;
    for (;;) {
      if (++visits > cap) throw CapExceeded("grid too fine: more than " + std::to_string(cap) + " cell visits");
      ++counts[cell];
      std::size_t k = 0;
      while (k < d && cell[k] == last[k]) {
        cell[k] = first[k];
        ++k;
      }
      if (k == d) break;
      ++cell[k];
    }
  }
  std::size_t most = 0;
  for (const auto& [cell, n] : counts) most = std::max(most, n);
  auto r = PropertyReport::holding(name, static_cast<double>(most));
  r.set_note("finitely many maps: every neighbourhood meets at most " + std::to_string(spec.size()) + " images");
  r.details()["max_images_per_cell"] = most;
  r.details()["cells_touched"] = counts.size();
  return r;
}

double SscConstants::sep_c_lower() const { return std::max(0.0, sep_c - slack); }

nlohmann::json SscConstants::to_json() const {
  nlohmann::json j;
  j["indices"] = indices;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < indices.size(); ++k) row.push_back(i == k ? nlohmann::json(nullptr) : json_number(at(i, k)));
    rows.push_back(row);
  }
  j["c_ij"] = rows;
  j["sep_c"] = json_number(sep_c);
  j["slack"] = json_number(slack);
  j["sep_c_lower"] = json_number(sep_c_lower());
  return j;
}

SscConstants ssc_constants(const IifsSpec& spec, const PointCloud& cloud, double approx_radius) {
  if (cloud.dim() != spec.dim()) throw DimensionMismatch(cloud.dim(), spec.dim());
  if (!(approx_radius >= 0.0)) throw InvalidArgument("approximation radius must be >= 0");
  const std::size_t n = spec.size();
  SscConstants out;
  out.indices = spec.alphabet();
  out.c.assign(n * n, kInf);
  out.sep_c = kInf;
  out.slack = 2.0 * spec.contraction_c() * approx_radius;
  std::vector<PointCloud> images;
  for (const IndexedMap& m : spec.maps()) images.push_back(apply_map(m.map, cloud));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = min_set_dist(images[i], images[j]);
      out.c[i * n + j] = v;
      out.c[j * n + i] = v;
      if (v < out.sep_c) {
        out.sep_c = v;
        out.argmin = std::make_pair(i, j);
      }
    }
  }
  return out;
}

SscConstants ssc_constants(const IifsSpec& spec, const AttractorApprox& a) {
  return ssc_constants(spec, a.cloud, a.hausdorff_radius());
}

PropertyReport check_ssc(const IifsSpec& spec, const AttractorApprox& a) {
  const std::string name = "ssc";
  SscConstants k = ssc_constants(spec, a);
  PropertyReport r = [&] {
    if (!k.argmin) {
      auto h = PropertyReport::holding(name, kInf);
      h.set_note("single map: no distinct pairs");
      return h;
    }
    const auto [i, j] = *k.argmin;
    if (k.sep_c == 0.0) {
      return PropertyReport::failing(name, Witness{{k.indices[i], k.indices[j]},
                                                   "the two image clouds share a point"});
    }
    if (k.sep_c_lower() > 0.0) return PropertyReport::holding(name, k.sep_c_lower());
    return PropertyReport::inconclusive(name, 0.0, "separation is below the approximation slack");
  }();
  r.details() = k.to_json();
  return r;
}

}  // namespace hlab
