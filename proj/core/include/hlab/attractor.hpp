#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hlab/ifs.hpp"
#include "hlab/metric.hpp"
#include "hlab/rational.hpp"
#include "hlab/rational_cloud.hpp"
#include "hlab/report.hpp"
#include "hlab/word.hpp"

namespace hlab {

/// ε-pruned union of f_i(A) over all maps of the (truncated) system. On a
/// finite cloud the closure in G_S changes nothing, so this is both F_S(A)
/// and G_S(A) up to pruning.
PointCloud hb_step(const IifsSpec& spec, const PointCloud& a, double eps = 0.0);
RationalCloud hb_step(const IifsSpec& spec, const RationalCloud& a);

struct IterationOptions {
  /// Number of steps; ignored when target_error is set.
  std::size_t steps = 10;
  /// Stop at the first n with c^n/(1−c)·h(A_0,A_1) <= target_error.
  std::optional<double> target_error;
  /// Final pruning radius; step k is pruned at epsilon·c^(n−k).
  double epsilon = 0.0;
  std::size_t max_points = 1'000'000;
};

/// A_n with its certified distance to the attractor.
///
/// error_bound = c^n/(1−c)·h(A_0,A_1). Pruning moves the iterates by at
/// most pruning_slack = Σ ε_k, reported separately, so
/// h(cloud, A) <= error_bound + pruning_slack.
struct AttractorApprox {
  PointCloud cloud;
  std::size_t iterations = 0;
  double error_bound = 0.0;
  double h01 = 0.0;
  double pruning_slack = 0.0;
  double contraction_c = 0.0;
  std::optional<std::size_t> truncation;
  std::string fingerprint;

  double hausdorff_radius() const { return error_bound + pruning_slack; }
  /// {"n", "c", "h01", "error_bound", "pruning_slack", "truncation"}.
  nlohmann::json sidecar() const;
};

/// Default start set: the singleton {box center}.
PointCloud default_start(const IifsSpec& spec);

/// Throws InvalidArgument when A_0 leaves the domain box or target_error <= 0,
/// CapExceeded when an iterate outgrows max_points.
AttractorApprox iterate_attractor(const IifsSpec& spec, const PointCloud& a0, const IterationOptions& options);
AttractorApprox iterate_attractor(const IifsSpec& spec, const IterationOptions& options);

/// Exact iterates A_0..A_n for 1-D exact systems, with the exact bound.
struct ExactIteration {
  std::vector<RationalCloud> iterates;
  Rational h01;
  /// c^n/(1−c)·h01 for each n.
  std::vector<Rational> error_bounds;
};
ExactIteration iterate_attractor_exact(const IifsSpec& spec, const RationalCloud& a0, std::size_t steps,
                                       std::size_t max_points = 1'000'000);

/// Fixed point e_ω of f_ω by Banach iteration from the box center, within
/// tol of the true fixed point. Throws InvalidArgument for the empty word.
Point word_fixed_point(const IifsSpec& spec, const Word& w, double tol = 1e-13);
Rational word_fixed_point_exact(const IifsSpec& spec, const Word& w);

/// {e_ω : |ω| = depth}; throws CapExceeded above `cap` words.
PointCloud attractor_by_words(const IifsSpec& spec, std::size_t depth, std::size_t cap = 1'000'000);
RationalCloud attractor_by_words_exact(const IifsSpec& spec, std::size_t depth, std::size_t cap = 1'000'000);

/// A_ω = f_ω(A) with diam_bound = c^|ω|·δ(A) + slack.
struct CylinderApprox {
  Word word;
  PointCloud cloud;
  double diam_bound = 0.0;
};

CylinderApprox cylinder(const IifsSpec& spec, const AttractorApprox& a, const Word& w);

/// Checks h(A_n, A) <= c^n/(1−c)·h(A_0, A_1) for n = 1..steps, with A
/// replaced by the word-fixed-point cloud of depth ref_depth and the
/// reference error c^ref_depth·diam(box) added to the right-hand side.
/// Iterates are unpruned; 1-D exact systems are checked in exact arithmetic.
PropertyReport check_convergence_rate(const IifsSpec& spec, const PointCloud& a0, std::size_t steps,
                                      std::size_t ref_depth, std::size_t cap = 1'000'000);

}  // namespace hlab
