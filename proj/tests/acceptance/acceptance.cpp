// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hlab/attractor.hpp"
#include "hlab/coding.hpp"
#include "hlab/counterexamples.hpp"
#include "hlab/ifs.hpp"
#include "hlab/lattice.hpp"
#include "hlab/rational_cloud.hpp"
#include "hlab/verify.hpp"

namespace {

using namespace hlab;

struct Outcome {
  bool pass;
  std::string detail;
};

IifsSpec cantor_pair() {
  return IifsSpec::exact_1d(ExactInterval{0, 1}, {{Rational(1, 3), 0}, {Rational(1, 3), Rational(2, 3)}});
}

// A_12 from the box center, unpruned.
const AttractorApprox& cantor_approx() {
  static const AttractorApprox a = [] {
    IterationOptions opts;
    opts.steps = 12;
    return iterate_attractor(cantor_pair(), opts);
  }();
  return a;
}

const CodingMap& cantor_pi() {
  static const CodingMap pi(cantor_pair(), cantor_approx());
  return pi;
}

WordPrefix random_prefix(std::mt19937_64& rng, const std::vector<std::string>& alphabet, std::size_t depth) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::vector<std::string> letters;
  for (std::size_t k = 0; k < depth; ++k) letters.push_back(alphabet[pick(rng)]);
  return WordPrefix(Word(std::move(letters)));
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome convergence_rate_exact() {
  auto t0 = std::chrono::steady_clock::now();
  IifsSpec s = cantor_pair();
  ExactIteration it = iterate_attractor_exact(s, RationalCloud({Rational(0)}), 12);
  RationalCloud ref = attractor_by_words_exact(s, 14);
  Rational ref_error = pow(Rational(3), -14);
  std::size_t violations = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    Rational rate = pow(Rational(3), -static_cast<std::int64_t>(n));
    if (it.error_bounds[n] != rate) ++violations;
    if (!(hausdorff_dist(it.iterates[n], ref) <= rate + ref_error)) ++violations;
  }
  double t = seconds_since(t0);
  return {violations == 0 && t < 5.0,
          "h01=" + to_string(it.h01) + ", violations=" + std::to_string(violations) + ", " + num(t) + " s"};
}

Outcome diameter_decay() {
  IifsSpec s = cantor_pair();
  const AttractorApprox& a = cantor_approx();
  const double delta = 1.0;  // δ of the middle-thirds set
  const double bound = std::pow(1.0 / 3, 8) * delta + 1e-12;
  std::size_t violations = 0;
  double worst = 0.0;
  std::vector<Word> words = all_words(s.alphabet(), 8, 256);
  for (const Word& w : words) {
    CylinderApprox c = cylinder(s, a, w);
    double d = diameter(c.cloud);
    worst = std::max(worst, d);
    if (!(d <= bound) || !(d <= c.diam_bound)) ++violations;
  }
  return {violations == 0 && words.size() == 256,
          std::to_string(words.size()) + " words, max diameter " + num(worst) + " <= " + num(bound) +
              ", violations=" + std::to_string(violations)};
}

Outcome semiconjugacy() {
  std::mt19937_64 rng(3);
  IifsSpec s = cantor_pair();
  std::vector<SemiconjugacySample> samples;
  std::uniform_int_distribution<int> letter(1, 2);
  for (int k = 0; k < 200; ++k) samples.push_back({std::to_string(letter(rng)), random_prefix(rng, s.alphabet(), 12)});
  PropertyReport r = check_semiconjugacy(cantor_pi(), samples);
  double residual = r.details().value("max_residual", INFINITY);
  double bound = 2 * std::pow(3.0, -12) * 1.0;
  return {r.holds() && residual <= bound,
          "200 samples, max residual " + num(residual) + " <= " + num(bound) + ", verdict " + to_string(r.verdict())};
}

Outcome coding_lipschitz() {
  std::mt19937_64 rng(4);
  IifsSpec s = cantor_pair();
  std::vector<PrefixPair> pairs;
  for (int k = 0; k < 1000; ++k) pairs.emplace_back(random_prefix(rng, s.alphabet(), 12), random_prefix(rng, s.alphabet(), 12));
  PropertyReport r = check_pi_lipschitz(cantor_pi(), pairs);
  return {r.holds(), "1000 pairs, max ratio " + num(r.details().value("max_ratio", INFINITY)) + " vs 3δ(A) = " +
                         num(3 * cantor_pi().delta_upper()) + ", verdict " + to_string(r.verdict())};
}

Outcome inverse_modulus() {
  const CodingMap& pi = cantor_pi();
  SscConstants k = ssc_constants(pi.spec(), pi.approx());
  double resolution = pi.approx().hausdorff_radius();
  bool ok = k.sep_c >= 1.0 / 3 - 2 * resolution;
  std::string detail = "sep_c=" + num(k.sep_c) + " (>= " + num(1.0 / 3 - 2 * resolution) + ")";
  for (Rational eps : {Rational(1, 3), Rational(1, 9), Rational(1, 27)}) {
    PropertyReport r = inverse_modulus_exhaustive(pi, eps, 10);
    ok = ok && r.holds();
    detail += ", eps=" + to_string(eps) + " " + to_string(r.verdict());
  }
  return {ok, detail + " over 1024^2 ordered pairs"};
}

Outcome tk_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6);
  std::size_t accepted = 0, drawn = 0, mismatches = 0;
  while (accepted < 500) {
    ++drawn;
    std::size_t n = std::uniform_int_distribution<std::size_t>(4, 10)(rng);
    std::size_t maps = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    // Values drawn from per-map blocks so most draws are non-overlapping.
    std::vector<std::size_t> owner(n);
    for (std::size_t& o : owner) o = std::uniform_int_distribution<std::size_t>(0, maps)(rng);
    std::vector<std::vector<std::size_t>> tables(maps, std::vector<std::size_t>(n));
    for (std::size_t k = 0; k < maps; ++k) {
      std::vector<std::size_t> pool;
      for (std::size_t y = 0; y < n; ++y) {
        if (owner[y] == k) pool.push_back(y);
      }
      if (pool.empty()) pool.push_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
      for (std::size_t& y : tables[k]) y = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    }
    std::vector<std::string> labels, indices;
    for (std::size_t y = 0; y < n; ++y) labels.push_back(std::to_string(y));
    for (std::size_t k = 0; k < maps; ++k) indices.push_back(std::to_string(k + 1));
    SelfMapTable t(FiniteUniverse(labels), indices, tables);
    if (!check_continuity_premises(t).holds()) continue;
    ++accepted;
    std::optional<Subset> brute = subset_maximum(brute_force_fixed_subsets(t));
    if (!brute || tk_gfp(t).gfp != *brute) ++mismatches;
  }
  double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 30.0, std::to_string(accepted) + " tables (" + std::to_string(drawn) +
                                              " drawn), mismatches=" + std::to_string(mismatches) + ", " + num(secs) + " s"};
}

Outcome frac_shift_claims() {
  PropertyReport r = frac_shift_counterexample(50, 50);
  const auto& d = r.details();
  bool ok = r.holds() && d["zero_in_f_n_of_C_n"].size() == 48 && d["intersection_grid_hits"] == nlohmann::json::array({"0"}) &&
            d["image_of_zero"].size() == 49 && d["image_of_zero_contains_zero"] == false;
  return {ok, "0 in f_n(C_n) for n=3..50, intersection " + d.value("intersection", std::string("?")) +
                  ", image of {0} has " + std::to_string(d["image_of_zero"].size()) + " points, none 0"};
}

Outcome dyadic_cluster_claims() {
  PropertyReport r = dyadic_cluster_counterexample(20);
  const auto& d = r.details();
  std::string inf = d.value("infimum", std::string("?"));
  bool ok = r.holds() && inf == to_string(pow(Rational(2), -39)) && d["zero_attained"] == false && d["images"].size() == 20;
  return {ok, "20 disjoint images, infimum " + inf + ", 0 unattained, min gap " + r.margin_exact().value_or("?")};
}

Outcome separation_structure() {
  PropertyReport strong = check_strongly_non_overlapping(cantor_pair(), 5);
  double slack = 1e-12;
  bool ok = strong.holds() && strong.margin() >= std::pow(3.0, -5) / 3 - slack;
  PropertyReport groups = disconnectedness_probe(cantor_pi(), 5);
  int count = groups.details().value("groups", 0);
  ok = ok && groups.holds() && count == 32;
  return {ok, "strong non-overlap to depth 5 margin " + strong.margin_exact().value_or(num(strong.margin())) + ", " +
                  std::to_string(count) + " groups"};
}

Outcome heine_borel_instance() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<IndexedMap> maps;
  const double r = 0.25;
  const double offsets[3][2] = {{0.0, 0.0}, {0.75, 0.0}, {0.375, 0.75}};
  for (int k = 0; k < 3; ++k) {
    maps.push_back({std::to_string(k + 1),
                    AffineContraction(2, {r, 0, 0, r}, {offsets[k][0], offsets[k][1]}, r, r), std::nullopt});
  }
  IifsSpec s(Box({0, 0}, {1, 1}), std::move(maps));
  IterationOptions opts;
  opts.steps = 15;
  opts.epsilon = 2.5e-7;
  opts.max_points = 5'000'000;
  AttractorApprox a = iterate_attractor(s, opts);
  double residual = hausdorff_dist(a.cloud, hb_step(s, a.cloud));
  double bound = 2 * a.error_bound + 1e-6;
  return {residual <= bound, "n=15, " + std::to_string(a.cloud.size()) + " points, residual " + num(residual) +
                                 " <= " + num(bound) + " (error bound " + num(a.error_bound) + ", pruning slack " +
                                 num(a.pruning_slack) + "), " + num(seconds_since(t0)) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 convergence rate (exact)", convergence_rate_exact},
      {"2 cylinder diameter decay", diameter_decay},
      {"3 semiconjugacy", semiconjugacy},
      {"4 coding map Lipschitz bound", coding_lipschitz},
      {"5 inverse continuity modulus", inverse_modulus},
      {"6 greatest fixed point vs enumeration", tk_oracle},
      {"7 frac-shift counterexample", frac_shift_claims},
      {"8 dyadic cluster counterexample", dyadic_cluster_claims},
      {"9 separation structure", separation_structure},
      {"10 invariance residual, 2-D system", heine_borel_instance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-40s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
