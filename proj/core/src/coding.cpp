#include "hlab/coding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "hlab/error.hpp"
#include "hlab/verify.hpp"

namespace hlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnit = std::numeric_limits<double>::epsilon();
constexpr double kFixedPointTol = 1e-13;

double round_up(double x) { return x * (1.0 + 4.0 * kUnit); }

std::string number_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Outward-rounded box around the cylinder f_ω(box).
Box cylinder_box(const IifsSpec& spec, const Word& w) {
  if (spec.is_exact()) {
    ExactInterval i = compose_word_exact(spec, w).image(*spec.exact_box());
    double lo = to_double(i.lo);
    double hi = to_double(i.hi);
    return Box({std::nextafter(lo, -kInf)}, {std::nextafter(hi, kInf)});
  }
  return image_enclosure(spec, w, spec.box());
}

void require_strong_non_overlap(const IifsSpec& spec, std::size_t depth, std::size_t cap) {
  PropertyReport r = check_strongly_non_overlapping(spec, depth, cap);
  if (!r.holds()) {
    throw PreconditionFailed("strong non-overlap does not hold up to depth " + std::to_string(depth) + " (" +
                             to_string(r.verdict()) + ")");
  }
}

}  // namespace

nlohmann::json CodedPoint::to_json() const {
  nlohmann::json j;
  j["prefix"] = prefix.word().literal();
  j["depth"] = prefix.depth();
  j["point"] = std::vector<double>(point.coords().begin(), point.coords().end());
  j["error_bound"] = json_number(error_bound);
  return j;
}

CodingMap::CodingMap(IifsSpec spec, AttractorApprox approx)
    : spec_(std::move(spec)), approx_(std::move(approx)), c_(spec_.contraction_c()) {
  if (approx_.cloud.dim() != spec_.dim()) throw DimensionMismatch(approx_.cloud.dim(), spec_.dim());
  if (auto exact = spec_.contraction_c_exact()) c_ = std::max(c_, std::nextafter(to_double(*exact), kInf));
  delta_upper_ = round_up(diameter(approx_.cloud) + 2.0 * approx_.hausdorff_radius());
  double scale = 1.0;
  for (std::size_t k = 0; k < spec_.dim(); ++k) {
    scale = std::max({scale, std::abs(spec_.box().lo()[k]), std::abs(spec_.box().hi()[k])});
  }
  rounding_ = 4.0 * static_cast<double>(spec_.dim() + 2) * kUnit * scale / (1.0 - c_);
  for (const IndexedMap& m : spec_.maps()) {
    Word letter({m.index});
    letter_fixed_points_.push_back(word_fixed_point(spec_, letter, kFixedPointTol));
    if (spec_.is_exact()) {
      letter_fixed_points_exact_.push_back(word_fixed_point_exact(spec_, letter));
    } else {
      letter_fixed_points_exact_.push_back(std::nullopt);
    }
  }
}

CodedPoint CodingMap::code(const WordPrefix& w) const {
  if (w.depth() == 0) return {w, letter_fixed_points_[0], delta_upper_, 0.0};
  std::size_t k = spec_.index_of(w[0]);
  double base_distance = letter_fixed_points_exact_[k] ? 0.0 : kFixedPointTol;
  return code_from(w, letter_fixed_points_[k], base_distance, letter_fixed_points_exact_[k]);
}

CodedPoint CodingMap::code(const WordPrefix& w, const Point& base) const {
  if (base.dim() != spec_.dim()) throw DimensionMismatch(base.dim(), spec_.dim());
  if (!spec_.box().contains(base.coords(), 1e-12)) throw InvalidArgument("base point leaves the domain box");
  PointCloud single({base});
  double base_distance = round_up(directed_set_dist(single, approx_.cloud) + approx_.hausdorff_radius());
  if (w.depth() == 0) return {w, base, round_up(delta_upper_ + base_distance), 0.0};
  return code_from(w, base, base_distance, std::nullopt);
}

CodedPoint CodingMap::code_from(const WordPrefix& w, const Point& base, double base_distance,
                                const std::optional<Rational>& exact_base) const {
  for (std::size_t k = 0; k < w.depth(); ++k) spec_.index_of(w[k]);
  const double cm = round_up(std::pow(c_, static_cast<double>(w.depth())));
  if (exact_base && spec_.is_exact()) {
    Rational x = *exact_base;
    for (std::size_t k = w.depth(); k-- > 0;) x = (*spec_.map(w[k]).exact)(x);
    double value = to_double(x);
    double ulp = std::abs(value) * kUnit + std::numeric_limits<double>::denorm_min();
    return {w, Point{value}, round_up(cm * delta_upper_ + ulp), ulp};
  }
  Point x = base;
  for (std::size_t k = w.depth(); k-- > 0;) x = spec_.map(w[k]).map(x);
  double slack = round_up(cm * base_distance + rounding_);
  return {w, std::move(x), round_up(cm * (delta_upper_ + base_distance) + rounding_), slack};
}

PropertyReport check_semiconjugacy(const CodingMap& pi, const std::vector<SemiconjugacySample>& samples) {
  const std::string name = "semiconjugacy";
  if (samples.empty()) throw InvalidArgument("at least one sample is required");
  double max_residual = 0.0;
  double margin = kInf;
  for (const SemiconjugacySample& s : samples) {
    const IndexedMap& f = pi.spec().map(s.letter);
    CodedPoint shifted = pi.code(right_shift(s.letter, s.word));
    CodedPoint plain = pi.code(s.word);
    Point image = f.map(plain.point);
    double residual = point_dist(shifted.point, image);
    double bound = round_up(shifted.error_bound + f.map.lip_bound() * plain.error_bound);
    max_residual = std::max(max_residual, residual);
    if (residual > bound) {
      auto r = PropertyReport::failing(
          name, Witness{{s.letter, s.word.word().literal(), number_text(residual)},
                        "residual exceeds the combined coding error " + number_text(bound)});
      r.details()["max_residual"] = max_residual;
      return r;
    }
    margin = std::min(margin, bound - residual);
  }
  auto r = PropertyReport::holding(name, margin);
  r.details()["max_residual"] = max_residual;
  r.details()["samples"] = samples.size();
  return r;
}

PropertyReport check_pi_lipschitz(const CodingMap& pi, const std::vector<PrefixPair>& pairs) {
  const std::string name = "coding-lipschitz";
  if (auto exact = pi.spec().contraction_c_exact()) {
    if (*exact * 3 > 1) throw PreconditionFailed("contraction factor exceeds 1/3");
  } else if (pi.spec().contraction_c() > 1.0 / 3.0) {
    throw PreconditionFailed("contraction factor exceeds 1/3");
  }
  if (pairs.empty()) throw InvalidArgument("at least one pair is required");
  const double delta = pi.delta_upper();
  double margin = kInf;
  double max_ratio = 0.0;
  for (const auto& [a, b] : pairs) {
    MetricBounds m = word_metric(a, b);
    double upper = round_up(to_double(m.upper));
    CodedPoint pa = pi.code(a);
    CodedPoint pb = pi.code(b);
    double lhs = point_dist(pa.point, pb.point);
    double rhs = round_up(3.0 * delta * upper + pa.error_bound + pb.error_bound);
    if (delta > 0.0 && upper > 0.0) max_ratio = std::max(max_ratio, lhs / (delta * upper));
    if (lhs > rhs) {
      auto r = PropertyReport::failing(name, Witness{{a.word().literal(), b.word().literal(), number_text(lhs)},
                                                     "distance exceeds 3·δ(A)·d_upper plus coding errors"});
      r.details()["max_ratio"] = max_ratio;
      return r;
    }
    margin = std::min(margin, rhs - lhs);
  }
  auto r = PropertyReport::holding(name, margin);
  r.details()["max_ratio"] = max_ratio;
  r.details()["delta_upper"] = delta;
  r.details()["pairs"] = pairs.size();
  return r;
}

PropertyReport injectivity_search(const CodingMap& pi, std::size_t depth, std::size_t cap) {
  const std::string name = "injectivity";
  const IifsSpec& spec = pi.spec();
  if (depth == 0) throw InvalidArgument("depth must be >= 1");
  if (spec.size() == 1) {
    auto r = PropertyReport::holding(name, kInf);
    r.set_note("single map: no distinct words");
    return r;
  }
  std::size_t n = word_count(spec.size(), depth);
  if (n > cap || (n > 1 && n - 1 > 2 * cap / n)) throw CapExceeded("depth too large for the pair cap");
  require_strong_non_overlap(spec, depth, cap);
  std::vector<Word> words = all_words(spec.alphabet(), depth, cap);
  std::vector<CodedPoint> points;
  std::vector<Box> boxes;
  for (const Word& w : words) {
    points.push_back(pi.code(WordPrefix(w)));
    boxes.push_back(cylinder_box(spec, w));
  }
  double min_distance = kInf;
  double min_gap = kInf;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      ++pairs;
      double g = gap(boxes[a], boxes[b]);
      double d = point_dist(points[a].point, points[b].point);
      min_distance = std::min(min_distance, d);
      min_gap = std::min(min_gap, g);
      if (d < g - points[a].cylinder_slack - points[b].cylinder_slack || d == 0.0) {
        return PropertyReport::failing(name, Witness{{words[a].literal(), words[b].literal(), number_text(d)},
                                                     "coded points closer than their cylinder gap"});
      }
    }
  }
  auto r = PropertyReport::holding(name, min_distance);
  r.details()["pairs"] = pairs;
  r.details()["min_cylinder_gap"] = min_gap;
  return r;
}

double modulus_delta(double sep_c, double l, const Rational& eps) {
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (!(l > 0.0 && l <= 1.0)) throw InvalidArgument("bi-Lipschitz constant must lie in (0, 1]");
  if (std::isinf(sep_c)) return kInf;
  Rational q = eps;
  std::int64_t k = 0;
  while (q < 1 && k < 4096) {
    q *= 3;
    ++k;
  }
  if (q == 1) {
    double delta = sep_c;
    for (std::int64_t i = 0; i < k; ++i) delta *= l;
    return delta * (1.0 - 4.0 * static_cast<double>(k + 1) * kUnit);
  }
  double t = -std::log(to_double(eps)) / std::log(3.0);
  double t_up = t * (1.0 + 1e-14) + 1e-14;
  return sep_c * std::pow(l, t_up) * (1.0 - 1e-14);
}

namespace {

struct ModulusContext {
  const CodingMap& pi;
  Rational eps;
  ModulusOptions options;
  SscConstants ssc;
  double l;
  double uniform_delta;
  std::map<std::string, double> per_letter_sep;

  ModulusContext(const CodingMap& map, const Rational& e, const ModulusOptions& o)
      : pi(map), eps(e), options(o), ssc(ssc_constants(map.spec(), map.approx())) {
    auto bilip = pi.spec().bilip_lower();
    if (!bilip) throw PreconditionFailed("every map needs a lower bi-Lipschitz constant");
    l = *bilip;
    if (!(ssc.sep_c_lower() > 0.0)) throw PreconditionFailed("separation constant sep_c is 0 at this resolution");
    uniform_delta = modulus_delta(ssc.sep_c_lower(), l, eps);
    for (std::size_t i = 0; i < ssc.indices.size(); ++i) {
      double best = kInf;
      for (std::size_t j = 0; j < ssc.indices.size(); ++j) {
        if (j != i) best = std::min(best, ssc.at(i, j));
      }
      per_letter_sep[ssc.indices[i]] = std::max(0.0, best - ssc.slack);
    }
  }

  double delta_for(const WordPrefix& a) const {
    if (!options.per_word) return uniform_delta;
    double sep = kInf;
    for (std::size_t k = 0; k < a.depth(); ++k) sep = std::min(sep, per_letter_sep.at(a[k]));
    if (!(sep > 0.0)) return 0.0;
    return modulus_delta(sep, l, eps);
  }

  // Returns false on a violation of the implication.
  bool check(const WordPrefix& a, const CodedPoint& pa, const WordPrefix& b, const CodedPoint& pb,
             std::size_t& antecedents) const {
    double d = point_dist(pa.point, pb.point);
    if (!(d < delta_for(a) - pa.error_bound - pb.error_bound)) return true;
    ++antecedents;
    return word_metric(a, b).upper < eps;
  }

  PropertyReport finish(std::size_t pairs, std::size_t antecedents) const {
    auto r = PropertyReport::holding("inverse-modulus", uniform_delta);
    r.details()["delta_eps"] = json_number(uniform_delta);
    r.details()["sep_c_lower"] = json_number(ssc.sep_c_lower());
    r.details()["l"] = l;
    r.details()["epsilon"] = to_string(eps);
    r.details()["pairs"] = pairs;
    r.details()["antecedents_true"] = antecedents;
    r.details()["per_word"] = options.per_word;
    return r;
  }

  PropertyReport violation(const WordPrefix& a, const WordPrefix& b) const {
    return PropertyReport::failing("inverse-modulus",
                                   Witness{{a.word().literal(), b.word().literal()},
                                           "coded points lie within δ_ε but the words are at least ε apart"});
  }
};

}  // namespace

PropertyReport inverse_modulus_check(const CodingMap& pi, const Rational& eps, const std::vector<PrefixPair>& pairs,
                                     const ModulusOptions& options) {
  ModulusContext ctx(pi, eps, options);
  std::size_t antecedents = 0;
  for (const auto& [a, b] : pairs) {
    if (!ctx.check(a, pi.code(a), b, pi.code(b), antecedents)) return ctx.violation(a, b);
  }
  return ctx.finish(pairs.size(), antecedents);
}

PropertyReport inverse_modulus_exhaustive(const CodingMap& pi, const Rational& eps, std::size_t depth,
                                          const ModulusOptions& options, std::size_t cap) {
  ModulusContext ctx(pi, eps, options);
  std::size_t n = word_count(pi.spec().size(), depth);
  if (n > cap || (n > 0 && n > cap / n)) throw CapExceeded("depth too large for the pair cap");
  std::vector<WordPrefix> words;
  std::vector<CodedPoint> points;
  for (const Word& w : all_words(pi.spec().alphabet(), depth, cap)) {
    words.emplace_back(w);
    points.push_back(pi.code(words.back()));
  }
  std::size_t antecedents = 0;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (!ctx.check(words[a], points[a], words[b], points[b], antecedents)) return ctx.violation(words[a], words[b]);
    }
  }
  auto r = ctx.finish(words.size() * words.size(), antecedents);
  r.details()["depth"] = depth;
  return r;
}

PropertyReport disconnectedness_probe(const CodingMap& pi, std::size_t depth, std::optional<double> resolution) {
  const std::string name = "disconnectedness";
  const IifsSpec& spec = pi.spec();
  const PointCloud& cloud = pi.approx().cloud;
  if (depth == 0) throw InvalidArgument("depth must be >= 1");
  if (spec.size() == 1) {
    auto r = PropertyReport::inconclusive(name, 0.0, "single map: one group, the probe does not apply");
    r.details()["groups"] = 1;
    return r;
  }
  const double res = resolution ? *resolution : pi.approx().hausdorff_radius() + cloud.resolution();
  if (!(res >= 0.0)) throw InvalidArgument("resolution must be >= 0");
  std::size_t n = word_count(spec.size(), depth);
  if (n > 1'000'000 || n * cloud.size() > 100'000'000) throw CapExceeded("depth too large for the probe");
  require_strong_non_overlap(spec, depth, 1'000'000);
  std::vector<Word> words = all_words(spec.alphabet(), depth, 1'000'000);
  std::vector<Box> boxes;
  for (const Word& w : words) boxes.push_back(cylinder_box(spec, w));

  const std::size_t d = cloud.dim();
  std::vector<std::vector<double>> groups(words.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    Box here(std::vector<double>(cloud[i].begin(), cloud[i].end()), std::vector<double>(cloud[i].begin(), cloud[i].end()));
    std::size_t best = 0;
    double best_gap = kInf;
    for (std::size_t w = 0; w < boxes.size(); ++w) {
      double g = gap(here, boxes[w]);
      if (g < best_gap) {
        best_gap = g;
        best = w;
      }
      if (g == 0.0) break;
    }
    groups[best].insert(groups[best].end(), cloud[i].begin(), cloud[i].end());
  }

  std::size_t nonempty = 0;
  double min_group_gap = kInf;
  double min_cylinder_gap = kInf;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) continue;
    ++nonempty;
    double threshold_gap = kInf;
    std::vector<double> rest;
    for (std::size_t h = 0; h < groups.size(); ++h) {
      if (h == g) continue;
      threshold_gap = std::min(threshold_gap, gap(boxes[g], boxes[h]));
      rest.insert(rest.end(), groups[h].begin(), groups[h].end());
    }
    min_cylinder_gap = std::min(min_cylinder_gap, threshold_gap);
    if (rest.empty()) continue;
    double actual = min_set_dist(PointCloud(d, groups[g]), PointCloud(d, std::move(rest)));
    min_group_gap = std::min(min_group_gap, actual);
    if (actual < threshold_gap - 2.0 * res) {
      auto r = PropertyReport::failing(name, Witness{{words[g].literal(), number_text(actual)},
                                                     "group lies closer to the rest than its cylinder gap allows"});
      r.details()["groups"] = nonempty;
      return r;
    }
  }
  auto r = PropertyReport::holding(name, std::isinf(min_group_gap) ? kInf : min_group_gap);
  r.details()["groups"] = nonempty;
  r.details()["expected_groups"] = words.size();
  r.details()["min_cylinder_gap"] = json_number(min_cylinder_gap);
  r.details()["resolution"] = res;
  return r;
}

}  // namespace hlab
