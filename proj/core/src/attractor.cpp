#include "hlab/attractor.hpp"

#include <cmath>
#include <limits>

#include "hlab/error.hpp"
#include "hlab/parallel.hpp"
#include "hlab/report.hpp"

namespace hlab {
namespace {

constexpr double kBoxTol = 1e-12;
constexpr std::size_t kMaxBanachSteps = 1'000'000;

// Depth-first walk over all words of one length, carrying prefix composites
// so each word costs one composition.
template <class Map, class Compose, class Visit>
void walk_words(const std::vector<Map>& letters, const Map& identity, std::size_t depth, Compose compose_fn,
                Visit visit) {
  std::vector<Map> stack{identity};
  std::vector<std::size_t> choice;
  stack.reserve(depth + 1);
  choice.reserve(depth);
  if (depth == 0) {
    visit(stack.back());
    return;
  }
  choice.push_back(0);
  stack.push_back(compose_fn(stack.back(), letters[0]));
  for (;;) {
    if (choice.size() == depth) {
      visit(stack.back());
      // advance to next sibling, backtracking as needed
      for (;;) {
        if (choice.empty()) return;
        stack.pop_back();
        std::size_t next = choice.back() + 1;
        choice.pop_back();
        if (next < letters.size()) {
          choice.push_back(next);
          stack.push_back(compose_fn(stack.back(), letters[next]));
          break;
        }
      }
    } else {
      choice.push_back(0);
      stack.push_back(compose_fn(stack.back(), letters[0]));
    }
  }
}

}  // namespace

PointCloud hb_step(const IifsSpec& spec, const PointCloud& a, double eps) {
  if (a.dim() != spec.dim()) throw DimensionMismatch(a.dim(), spec.dim());
  if (!(eps >= 0.0)) throw InvalidArgument("pruning radius must be >= 0");
  const std::size_t d = a.dim();
  const std::size_t n = a.size();
  const auto& maps = spec.maps();
  std::vector<double> flat(maps.size() * n * d);
  parallel_chunks(maps.size() * n, 4096, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const AffineContraction& f = maps[k / n].map;
      f.apply(a[k % n], {flat.data() + k * d, d});
    }
  });
  PointCloud image(d, std::move(flat), spec.contraction_c() * a.resolution());
  return eps > 0.0 ? epsilon_prune(image, eps) : image;
}

RationalCloud hb_step(const IifsSpec& spec, const RationalCloud& a) {
  if (!spec.is_exact()) throw InvalidArgument("exact step needs exact coefficients");
  std::vector<Rational> out;
  out.reserve(spec.size() * a.size());
  for (const IndexedMap& m : spec.maps()) {
    for (const Rational& x : a.values()) out.push_back((*m.exact)(x));
  }
  return RationalCloud(std::move(out));
}

nlohmann::json AttractorApprox::sidecar() const {
  nlohmann::json j;
  j["n"] = iterations;
  j["c"] = json_number(contraction_c);
  j["h01"] = json_number(h01);
  j["error_bound"] = json_number(error_bound);
  j["pruning_slack"] = json_number(pruning_slack);
  j["truncation"] = truncation ? nlohmann::json(*truncation) : nlohmann::json(nullptr);
  return j;
}

PointCloud default_start(const IifsSpec& spec) { return PointCloud({Point(spec.box().center())}); }

AttractorApprox iterate_attractor(const IifsSpec& spec, const IterationOptions& options) {
  return iterate_attractor(spec, default_start(spec), options);
}

AttractorApprox iterate_attractor(const IifsSpec& spec, const PointCloud& a0, const IterationOptions& options) {
  if (a0.dim() != spec.dim()) throw DimensionMismatch(a0.dim(), spec.dim());
  if (options.target_error && !(*options.target_error > 0.0)) throw InvalidArgument("target error must be > 0");
  if (!(options.epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
  for (std::size_t i = 0; i < a0.size(); ++i) {
    if (!spec.box().contains(a0[i], kBoxTol)) throw InvalidArgument("start set leaves the domain box");
  }
  const double c = spec.contraction_c();
  auto check_cap = [&](const PointCloud& a) {
    if (a.size() * spec.size() > options.max_points) {
      throw CapExceeded("next iterate would hold " + std::to_string(a.size() * spec.size()) +
                        " points, above the cap of " + std::to_string(options.max_points) +
                        "; raise the cap or prune with a larger epsilon");
    }
  };

  check_cap(a0);
  PointCloud a1 = hb_step(spec, a0, 0.0);
  const double h01 = hausdorff_dist(a0, a1);

  // bounds[n] = c^n/(1−c)·h01, built by repeated multiplication so that
  // bounds[n+1] == c·bounds[n] holds exactly.
  double bound = h01 / (1.0 - c);
  std::size_t n = options.steps;
  if (options.target_error) {
    n = 0;
    while (bound > *options.target_error) {
      bound *= c;
      ++n;
      if (n > 100'000) throw InvalidArgument("target error unreachable");
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) bound *= c;
  }

  AttractorApprox out{a0, 0, 0.0, h01, 0.0, c, spec.truncation(), spec.fingerprint()};
  double slack = 0.0;
  PointCloud current = a0;
  for (std::size_t k = 1; k <= n; ++k) {
    double eps_k = options.epsilon * std::pow(c, static_cast<double>(n - k));
    if (k == 1) {
      current = eps_k > 0.0 ? epsilon_prune(a1, eps_k) : a1;
    } else {
      check_cap(current);
      current = hb_step(spec, current, eps_k);
    }
    if (eps_k > 0.0) slack += eps_k;
  }
  out.cloud = std::move(current);
  out.iterations = n;
  out.error_bound = bound;
  out.pruning_slack = slack;
  return out;
}

ExactIteration iterate_attractor_exact(const IifsSpec& spec, const RationalCloud& a0, std::size_t steps,
                                       std::size_t max_points) {
  if (!spec.is_exact()) throw InvalidArgument("exact iteration needs exact coefficients");
  for (const Rational& x : a0.values()) {
    if (!spec.exact_box()->contains(x)) throw InvalidArgument("start set leaves the domain box");
  }
  const Rational c = *spec.contraction_c_exact();
  ExactIteration out{{a0}, Rational(0), {}};
  RationalCloud a1 = hb_step(spec, a0);
  out.h01 = hausdorff_dist(a0, a1);
  Rational bound = out.h01 / (Rational(1) - c);
  out.error_bounds.push_back(bound);
  for (std::size_t k = 1; k <= steps; ++k) {
    if (out.iterates.back().size() * spec.size() > max_points) throw CapExceeded("exact iterate exceeds the point cap");
    out.iterates.push_back(k == 1 ? a1 : hb_step(spec, out.iterates.back()));
    bound *= c;
    out.error_bounds.push_back(bound);
  }
  return out;
}

Point word_fixed_point(const IifsSpec& spec, const Word& w, double tol) {
  if (w.empty()) throw InvalidArgument("the empty word has no unique fixed point");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be > 0");
  if (spec.is_exact()) return Point{to_double(word_fixed_point_exact(spec, w))};
  AffineContraction f = compose_word(spec, w);
  const double lip = f.lip_bound();
  Point x(spec.box().center());
  for (std::size_t step = 0; step < kMaxBanachSteps; ++step) {
    Point y = f(x);
    if (lip == 0.0) return y;
    if (point_dist(x, y) <= tol * (1.0 - lip) / lip) return y;
    x = std::move(y);
  }
  throw InvalidArgument("fixed-point iteration did not reach the tolerance");
}

Rational word_fixed_point_exact(const IifsSpec& spec, const Word& w) {
  if (w.empty()) throw InvalidArgument("the empty word has no unique fixed point");
  return compose_word_exact(spec, w).fixed_point();
}

PointCloud attractor_by_words(const IifsSpec& spec, std::size_t depth, std::size_t cap) {
  if (depth == 0) throw InvalidArgument("word depth must be >= 1");
  if (word_count(spec.size(), depth) > cap) {
    throw CapExceeded("depth too large: " + std::to_string(spec.size()) + "^" + std::to_string(depth) +
                      " words exceed the cap of " + std::to_string(cap));
  }
  if (spec.is_exact()) return attractor_by_words_exact(spec, depth, cap).to_cloud();
  std::vector<AffineContraction> letters;
  for (const IndexedMap& m : spec.maps()) letters.push_back(m.map);
  std::vector<double> flat;
  const std::size_t d = spec.dim();
  walk_words(
      letters, AffineContraction::identity(d), depth,
      [](const AffineContraction& prefix, const AffineContraction& f) { return compose(prefix, f); },
      [&](const AffineContraction& f) {
        Point x(spec.box().center());
        const double lip = f.lip_bound();
        for (std::size_t step = 0;; ++step) {
          Point y = f(x);
          bool done = lip == 0.0 || point_dist(x, y) <= 1e-13 * (1.0 - lip) / lip;
          x = std::move(y);
          if (done) break;
          if (step == kMaxBanachSteps) throw InvalidArgument("fixed-point iteration did not converge");
        }
        flat.insert(flat.end(), x.coords().begin(), x.coords().end());
      });
  return PointCloud(d, std::move(flat), 0.0);
}

RationalCloud attractor_by_words_exact(const IifsSpec& spec, std::size_t depth, std::size_t cap) {
  if (!spec.is_exact()) throw InvalidArgument("exact words need exact coefficients");
  if (depth == 0) throw InvalidArgument("word depth must be >= 1");
  if (word_count(spec.size(), depth) > cap) {
    throw CapExceeded("depth too large: " + std::to_string(spec.size()) + "^" + std::to_string(depth) +
                      " words exceed the cap of " + std::to_string(cap));
  }
  std::vector<ExactAffine1D> letters;
  for (const IndexedMap& m : spec.maps()) letters.push_back(*m.exact);
  std::vector<Rational> points;
  walk_words(
      letters, ExactAffine1D{Rational(1), Rational(0)}, depth,
      [](const ExactAffine1D& prefix, const ExactAffine1D& f) { return compose(prefix, f); },
      [&](const ExactAffine1D& f) { points.push_back(f.fixed_point()); });
  return RationalCloud(std::move(points));
}

CylinderApprox cylinder(const IifsSpec& spec, const AttractorApprox& a, const Word& w) {
  AffineContraction f = compose_word(spec, w);
  PointCloud image = apply_map(f, a.cloud);
  double delta = diameter(a.cloud);
  double decay = std::pow(spec.contraction_c(), static_cast<double>(w.size()));
  double slack = 1e-12 * std::max(1.0, delta);
  return {w, std::move(image), decay * delta + slack};
}

PropertyReport check_convergence_rate(const IifsSpec& spec, const PointCloud& a0, std::size_t steps,
                                      std::size_t ref_depth, std::size_t cap) {
  const std::string name = "convergence-rate";
  if (steps == 0) throw InvalidArgument("steps must be >= 1");
  if (a0.size() * word_count(spec.size(), steps) > cap) throw CapExceeded("unpruned iterates exceed the point cap");
  nlohmann::json rows = nlohmann::json::array();

  if (spec.is_exact()) {
    std::vector<Rational> start;
    for (std::size_t i = 0; i < a0.size(); ++i) start.push_back(exact_from_double(a0[i][0]));
    ExactIteration it = iterate_attractor_exact(spec, RationalCloud(std::move(start)), steps, cap);
    RationalCloud ref = attractor_by_words_exact(spec, ref_depth, cap);
    const ExactInterval& box = *spec.exact_box();
    Rational ref_error = pow(*spec.contraction_c_exact(), static_cast<std::int64_t>(ref_depth)) * (box.hi - box.lo);
    std::optional<Rational> margin;
    for (std::size_t n = 1; n <= steps; ++n) {
      Rational h = hausdorff_dist(it.iterates[n], ref);
      Rational rhs = it.error_bounds[n] + ref_error;
      rows.push_back({{"n", n}, {"h", to_string(h)}, {"bound", to_string(rhs)}});
      if (h > rhs) {
        return PropertyReport::failing(name, Witness{{"n=" + std::to_string(n), to_string(h)},
                                                     "distance to the reference exceeds the error estimate"});
      }
      if (!margin || rhs - h < *margin) margin = rhs - h;
    }
    auto r = PropertyReport::holding(name, to_double(*margin));
    r.set_margin_exact(to_string(*margin));
    r.details()["h01"] = to_string(it.h01);
    r.details()["rows"] = rows;
    return r;
  }

  IterationOptions options;
  options.max_points = cap;
  PointCloud ref = attractor_by_words(spec, ref_depth, cap);
  double box_diam = 0.0;
  for (std::size_t k = 0; k < spec.dim(); ++k) box_diam += spec.box().width(k) * spec.box().width(k);
  box_diam = std::sqrt(box_diam);
  const double c = spec.contraction_c();
  const double ref_error = std::pow(c, static_cast<double>(ref_depth)) * box_diam + 1e-12 * (1.0 + box_diam);
  double margin = std::numeric_limits<double>::infinity();
  double h01 = 0.0;
  PointCloud current = a0;
  double bound = 0.0;
  for (std::size_t n = 1; n <= steps; ++n) {
    current = hb_step(spec, current, 0.0);
    if (n == 1) {
      h01 = hausdorff_dist(a0, current);
      bound = c * h01 / (1.0 - c);
    } else {
      bound *= c;
    }
    double h = hausdorff_dist(current, ref);
    double rhs = bound + ref_error;
    rows.push_back({{"n", n}, {"h", h}, {"bound", rhs}});
    if (h > rhs) {
      return PropertyReport::failing(name, Witness{{"n=" + std::to_string(n), std::to_string(h)},
                                                   "distance to the reference exceeds the error estimate"});
    }
    margin = std::min(margin, rhs - h);
  }
  auto r = PropertyReport::holding(name, margin);
  r.details()["h01"] = h01;
  r.details()["rows"] = rows;
  return r;
}

}  // namespace hlab
