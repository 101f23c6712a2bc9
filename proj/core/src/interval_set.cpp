#include "hlab/interval_set.hpp"

#include <algorithm>

namespace hlab {
namespace {

// Lower endpoint order: smaller value first, closed before open.
bool lower_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

Interval meet(const Interval& a, const Interval& b) {
  Interval out;
  if (a.lo > b.lo) {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed && b.hi_closed;
  }
  return out;
}

}  // namespace

bool Interval::empty() const {
  if (lo < hi) return false;
  if (lo == hi) return !(lo_closed && hi_closed);
  return true;
}

bool Interval::contains(const Rational& x) const {
  bool above = lo_closed ? x >= lo : x > lo;
  bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

std::string Interval::to_string() const {
  if (lo == hi && lo_closed && hi_closed) return "{" + hlab::to_string(lo) + "}";
  return std::string(lo_closed ? "[" : "(") + hlab::to_string(lo) + ", " + hlab::to_string(hi) +
         (hi_closed ? "]" : ")");
}

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Interval& i) { return i.empty(); }), parts.end());
  std::sort(parts.begin(), parts.end(), lower_before);
  for (Interval& p : parts) {
    if (!parts_.empty()) {
      Interval& last = parts_.back();
      bool connected = p.lo < last.hi || (p.lo == last.hi && (p.lo_closed || last.hi_closed));
      if (connected) {
        if (p.hi > last.hi) {
          last.hi = p.hi;
          last.hi_closed = p.hi_closed;
        } else if (p.hi == last.hi) {
          last.hi_closed = last.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    parts_.push_back(std::move(p));
  }
}

IntervalSet IntervalSet::point(const Rational& x) { return IntervalSet({Interval{x, x, true, true}}); }

IntervalSet IntervalSet::closed(const Rational& lo, const Rational& hi) {
  return IntervalSet({Interval{lo, hi, true, true}});
}

IntervalSet IntervalSet::half_open(const Rational& lo, const Rational& hi) {
  return IntervalSet({Interval{lo, hi, true, false}});
}

bool IntervalSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(x); });
}

std::optional<Rational> IntervalSet::infimum() const {
  if (parts_.empty()) return std::nullopt;
  return parts_.front().lo;
}

bool IntervalSet::infimum_attained() const { return !parts_.empty() && parts_.front().lo_closed; }

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) out += " U ";
    out += parts_[k].to_string();
  }
  return out;
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
  if (a.parts_.size() != b.parts_.size()) return false;
  for (std::size_t k = 0; k < a.parts_.size(); ++k) {
    const Interval& x = a.parts_[k];
    const Interval& y = b.parts_[k];
    if (x.lo != y.lo || x.hi != y.hi || x.lo_closed != y.lo_closed || x.hi_closed != y.hi_closed) return false;
  }
  return true;
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return IntervalSet(std::move(parts));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts;
  for (const Interval& x : a.parts()) {
    for (const Interval& y : b.parts()) parts.push_back(meet(x, y));
  }
  return IntervalSet(std::move(parts));
}

IntervalSet frac_shift(const IntervalSet& s, const Rational& t) {
  std::vector<Interval> parts;
  for (const Interval& p : s.parts()) {
    Interval moved{p.lo + t, p.hi + t, p.lo_closed, p.hi_closed};
    BigInt first = floor(moved.lo);
    BigInt last = floor(moved.hi);
    for (BigInt k = first; k <= last; ++k) {
      Rational base(k);
      Interval piece = meet(moved, Interval{base, base + 1, true, false});
      if (piece.empty()) continue;
      piece.lo -= base;
      piece.hi -= base;
      parts.push_back(std::move(piece));
    }
  }
  return IntervalSet(std::move(parts));
}

}  // namespace hlab
