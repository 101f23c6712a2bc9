#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hlab/error.hpp"
#include "hlab/rational.hpp"

namespace hlab {

/// Finite word over an alphabet of opaque index symbols; the empty word is λ.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::string> letters);

  /// Letters joined by '.', e.g. "1.2.1"; the empty string is λ.
  static Word parse(std::string_view literal);
  std::string literal() const;

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const std::vector<std::string>& letters() const noexcept { return letters_; }
  const std::string& operator[](std::size_t n) const { return letters_[n]; }

  /// First n letters.
  Word prefix(std::size_t n) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<std::string> letters_;
};

Word concat(const Word& a, const Word& b);

/// The prefix [ω]_n of an infinite word, carrying its declared depth n.
class WordPrefix {
 public:
  WordPrefix() = default;
  explicit WordPrefix(Word letters);
  /// Throws InvalidArgument unless letters.size() == declared_depth.
  WordPrefix(Word letters, std::size_t declared_depth);

  std::size_t depth() const noexcept { return word_.size(); }
  const Word& word() const noexcept { return word_; }
  const std::string& operator[](std::size_t n) const { return word_[n]; }

  friend bool operator==(const WordPrefix&, const WordPrefix&) = default;

 private:
  Word word_;
};

/// Exact enclosure of the shift-space distance Σ_n [α_n ≠ β_n] / 3^n of two
/// infinite words known through depth-N prefixes: `lower` sums the first N
/// terms, `upper` adds the worst-case tail 1/(2·3^N).
struct MetricBounds {
  Rational lower;
  Rational upper;
};

/// Throws InvalidArgument on depth mismatch.
MetricBounds word_metric(const WordPrefix& a, const WordPrefix& b);

/// The right shift F_i(ω) = iω.
WordPrefix right_shift(const std::string& letter, const WordPrefix& w);

/// Raised by first_mismatch when the prefixes agree through their depth.
class MismatchBeyondDepth : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Largest n with [α]_n = [β]_n.
std::size_t first_mismatch(const WordPrefix& a, const WordPrefix& b);

/// Number of words of length exactly `length`; saturates at SIZE_MAX.
std::size_t word_count(std::size_t alphabet_size, std::size_t length);

/// All words of the given length in lexicographic order of letter
/// positions in `alphabet`. Throws CapExceeded above `cap` words.
std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t length,
                            std::size_t cap);

}  // namespace hlab
