#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlab/rational.hpp"

namespace hlab {

/// Rational interval with independently open or closed endpoints.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const;
  bool contains(const Rational& x) const;
  std::string to_string() const;
};

/// Finite union of rational intervals, kept sorted with overlapping or
/// abutting connected pieces merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet point(const Rational& x);
  static IntervalSet closed(const Rational& lo, const Rational& hi);
  /// [lo, hi)
  static IntervalSet half_open(const Rational& lo, const Rational& hi);

  const std::vector<Interval>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  bool contains(const Rational& x) const;

  /// Greatest lower bound; nullopt for the empty set.
  std::optional<Rational> infimum() const;
  bool infimum_attained() const;

  /// "[0, 1/3] U [2/3, 1)", or "{}" when empty.
  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&);

 private:
  std::vector<Interval> parts_;
};

IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

/// {frac(x + t) : x ∈ s}, splitting each piece at the integers it crosses.
IntervalSet frac_shift(const IntervalSet& s, const Rational& t);

}  // namespace hlab
