#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlab/attractor.hpp"
#include "hlab/box.hpp"
#include "hlab/ifs.hpp"
#include "hlab/metric.hpp"
#include "hlab/report.hpp"

namespace hlab {

/// f_i(B) ∩ f_j(B) = ∅ for all i ≠ j, with B the domain box (or `box`).
///
/// Decided on image boxes: exact intervals in 1-D exact mode, outward
/// rounded enclosures otherwise. Overlapping enclosures fail only when a
/// common point of the two images is found by solving for preimages;
/// otherwise the verdict is inconclusive. Margin: smallest gap.
PropertyReport check_non_overlapping(const IifsSpec& spec, const std::optional<Box>& box = std::nullopt);

/// f_ω(B) ∩ f_γ(B) = ∅ for every pair of words of length 1..depth where
/// neither word is a prefix of the other. A holding verdict covers only the
/// checked depth. Throws CapExceeded when the pair count exceeds `cap`.
PropertyReport check_strongly_non_overlapping(const IifsSpec& spec, std::size_t depth,
                                              std::size_t cap = 1'000'000);

/// Local finiteness on an ε-grid of the domain box.
///
/// Finite systems hold, with margin the largest number of images meeting one
/// cell. A parametric family fails at its declared tail point once the
/// declared radius bound drops below ε (checked against the closed-form
/// images of every member up to that parameter); without a tail bound the
/// verdict is inconclusive. Throws CapExceeded beyond `cap` cell visits.
PropertyReport check_locally_finite(const IifsSpec& spec, double eps, std::size_t cap = 1'000'000);

/// Separation constants c_ij = min d(f_i(a), f_j(b)) over a, b in the
/// cloud, and sep_c = min_{i≠j} c_ij (+inf for a single map).
///
/// When the cloud is within `approx_radius` of the attractor, each true
/// constant lies within `slack` = 2·contraction_c·approx_radius of the
/// computed value.
struct SscConstants {
  std::vector<std::string> indices;
  /// Row-major |I|×|I|; the diagonal holds +inf.
  std::vector<double> c;
  double sep_c = 0.0;
  double slack = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> argmin;

  double at(std::size_t i, std::size_t j) const { return c[i * indices.size() + j]; }
  /// sep_c − slack, floored at 0.
  double sep_c_lower() const;
  nlohmann::json to_json() const;
};

SscConstants ssc_constants(const IifsSpec& spec, const PointCloud& cloud, double approx_radius);
SscConstants ssc_constants(const IifsSpec& spec, const AttractorApprox& a);

/// holds when sep_c − slack > 0, fails when two image clouds share a point.
PropertyReport check_ssc(const IifsSpec& spec, const AttractorApprox& a);

}  // namespace hlab
