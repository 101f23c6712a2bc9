#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlab/attractor.hpp"
#include "hlab/ifs.hpp"
#include "hlab/metric.hpp"
#include "hlab/rational.hpp"
#include "hlab/report.hpp"
#include "hlab/word.hpp"

namespace hlab {

/// Approximation f_{[ω]_m}(a) of the coded point a_ω = π(ω).
///
/// error_bound bounds d(point, a_ω) for every infinite word extending the
/// prefix; cylinder_slack bounds the distance from point to the cylinder
/// A_{[ω]_m} itself (fixed-point tolerance and rounding only).
struct CodedPoint {
  WordPrefix prefix;
  Point point;
  double error_bound = 0.0;
  double cylinder_slack = 0.0;

  nlohmann::json to_json() const;
};

/// The coding map π of a system, with constants taken from an attractor
/// approximation: δ(A) is bounded above by diameter(cloud) + 2·radius,
/// where radius = error_bound + pruning_slack of the approximation.
class CodingMap {
 public:
  CodingMap(IifsSpec spec, AttractorApprox approx);

  const IifsSpec& spec() const noexcept { return spec_; }
  const AttractorApprox& approx() const noexcept { return approx_; }
  double contraction_c() const noexcept { return c_; }
  double delta_upper() const noexcept { return delta_upper_; }

  /// Base point a = e_{ω_1}. The empty prefix yields the first map's fixed
  /// point with error_bound δ(A).
  CodedPoint code(const WordPrefix& w) const;
  /// Explicit base point inside the domain box.
  CodedPoint code(const WordPrefix& w, const Point& base) const;

 private:
  CodedPoint code_from(const WordPrefix& w, const Point& base, double base_distance,
                       const std::optional<Rational>& exact_base) const;

  IifsSpec spec_;
  AttractorApprox approx_;
  double c_;
  double delta_upper_;
  double rounding_;
  std::vector<Point> letter_fixed_points_;
  std::vector<std::optional<Rational>> letter_fixed_points_exact_;
};

struct SemiconjugacySample {
  std::string letter;
  WordPrefix word;
};

/// d(π(iω), f_i(π(ω))) <= error(iω) + lip(f_i)·error(ω) for every sample.
PropertyReport check_semiconjugacy(const CodingMap& pi, const std::vector<SemiconjugacySample>& samples);

using PrefixPair = std::pair<WordPrefix, WordPrefix>;

/// d(π(α), π(β)) <= 3·δ(A)·d_upper(α, β) + error(α) + error(β) per pair.
/// Throws PreconditionFailed when contraction_c > 1/3.
PropertyReport check_pi_lipschitz(const CodingMap& pi, const std::vector<PrefixPair>& pairs);

/// Coded points of distinct depth-D words stay apart by at least the gap of
/// their cylinder boxes minus the cylinder slacks. Throws PreconditionFailed
/// unless strong non-overlap holds up to D, CapExceeded above `cap` pairs.
PropertyReport injectivity_search(const CodingMap& pi, std::size_t depth, std::size_t cap = 1'000'000);

struct ModulusOptions {
  /// Use c_α = min over letters a of α and j ≠ a of c_aj instead of the
  /// uniform sep_c (weaker, pointwise variant).
  bool per_word = false;
};

/// δ_ε = sep_c·l^(−log₃ ε), rounded down; exact integer exponent when
/// ε = 3^−k. sep_c is the computed separation minus its slack.
double modulus_delta(double sep_c, double l, const Rational& eps);

/// d(π(α), π(β)) < δ_ε − error(α) − error(β)  ⇒  d_upper(α, β) < ε.
/// Throws PreconditionFailed without bi-Lipschitz constants or with sep_c = 0.
PropertyReport inverse_modulus_check(const CodingMap& pi, const Rational& eps, const std::vector<PrefixPair>& pairs,
                                     const ModulusOptions& options = {});
/// Same, over all ordered pairs of depth-D words (α = β included).
PropertyReport inverse_modulus_exhaustive(const CodingMap& pi, const Rational& eps, std::size_t depth,
                                          const ModulusOptions& options = {}, std::size_t cap = 10'000'000);

/// Partition the approximation cloud by depth-D cylinder and check that the
/// groups are separated by at least the smallest cylinder gap minus
/// 2·resolution (resolution defaults to the approximation radius).
PropertyReport disconnectedness_probe(const CodingMap& pi, std::size_t depth,
                                      std::optional<double> resolution = std::nullopt);

}  // namespace hlab
