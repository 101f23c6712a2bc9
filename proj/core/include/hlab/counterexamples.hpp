#pragma once

#include <cstdint>

#include "hlab/interval_set.hpp"
#include "hlab/lattice.hpp"
#include "hlab/report.hpp"

namespace hlab {

/// Rotations f_m(x) = frac(x + 1/m) on the sets C_n = [0, 1/n] ∪ [1 − 1/n, 1).
///
/// Certifies in exact arithmetic, for 3 <= n <= N and 2 <= m <= M:
///  - 0 ∈ f_n(C_n), witnessed by x = 1 − 1/n;
///  - ⋂ C_n is [0, 1/N] ∪ [1 − 1/N, 1) and meets the grid {k/(N−1)} only in 0;
///  - ⋃ f_m({0}) = {1/2, ..., 1/M} does not contain 0.
/// So the union map does not commute with the decreasing intersection.
/// Margin: distance 1/M from 0 to the image of {0}. Requires N >= 3, M >= 2.
PropertyReport frac_shift_counterexample(std::int64_t n_max, std::int64_t m_max);

/// C_n = [0, 1/n] ∪ [1 − 1/n, 1).
IntervalSet frac_shift_set(std::int64_t n);

/// The rotations m = 2..M restricted to the grid {k/L}, L = lcm(2..M), as
/// a finite lattice problem. Throws CapExceeded when L > 10^6.
SelfMapTable frac_shift_system(std::int64_t m_max);

/// f_m(x) = (x + 1)/2^(2m−1) on [0, 1], m = 1..M.
///
/// Certifies that the images [1/2^(2m−1), 1/2^(2m−2)] are pairwise
/// disjoint, that their infimum is 2^−(2M−1) and that 0 lies in no image.
/// Margin: smallest gap between two images. Requires M >= 2.
PropertyReport dyadic_cluster_counterexample(std::int64_t m_max);

}  // namespace hlab
