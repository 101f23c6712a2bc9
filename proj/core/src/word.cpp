#include "hlab/word.hpp"

#include <limits>

#include "hlab/error.hpp"

namespace hlab {

Word::Word(std::vector<std::string> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.empty()) throw InvalidArgument("word letters must be nonempty");
    if (l.find('.') != std::string::npos) throw InvalidArgument("word letters may not contain '.'");
  }
}

Word Word::parse(std::string_view literal) {
  std::vector<std::string> letters;
  if (literal.empty()) return Word{};
  std::size_t start = 0;
  while (true) {
    auto dot = literal.find('.', start);
    auto letter = literal.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (letter.empty()) throw InvalidArgument("empty letter in word literal '" + std::string(literal) + "'");
    letters.emplace_back(letter);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Word(std::move(letters));
}

std::string Word::literal() const {
  std::string out;
  for (std::size_t n = 0; n < letters_.size(); ++n) {
    if (n) out += '.';
    out += letters_[n];
  }
  return out;
}

Word Word::prefix(std::size_t n) const {
  if (n > letters_.size()) throw InvalidArgument("prefix longer than word");
  return Word(std::vector<std::string>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word concat(const Word& a, const Word& b) {
  std::vector<std::string> letters = a.letters();
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(letters));
}

WordPrefix::WordPrefix(Word letters) : word_(std::move(letters)) {}

WordPrefix::WordPrefix(Word letters, std::size_t declared_depth) : word_(std::move(letters)) {
  if (word_.size() != declared_depth) {
    throw InvalidArgument("prefix length " + std::to_string(word_.size()) + " differs from declared depth " +
                          std::to_string(declared_depth));
  }
}

MetricBounds word_metric(const WordPrefix& a, const WordPrefix& b) {
  if (a.depth() != b.depth()) {
    throw InvalidArgument("word_metric: depth mismatch " + std::to_string(a.depth()) + " vs " +
                          std::to_string(b.depth()));
  }
  const std::size_t depth = a.depth();
  // Σ_{n <= N, α_n ≠ β_n} 3^{N-n}, over the common denominator 3^N.
  BigInt numerator = 0;
  for (std::size_t n = 0; n < depth; ++n) {
    numerator *= 3;
    if (a[n] != b[n]) numerator += 1;
  }
  BigInt scale = 1;
  for (std::size_t n = 0; n < depth; ++n) scale *= 3;
  Rational lower(numerator, scale);
  Rational upper = lower + Rational(BigInt(1), BigInt(2) * scale);
  return {std::move(lower), std::move(upper)};
}

WordPrefix right_shift(const std::string& letter, const WordPrefix& w) {
  return WordPrefix(concat(Word({letter}), w.word()));
}

std::size_t first_mismatch(const WordPrefix& a, const WordPrefix& b) {
  if (a.depth() != b.depth()) throw InvalidArgument("first_mismatch: depth mismatch");
  for (std::size_t n = 0; n < a.depth(); ++n) {
    if (a[n] != b[n]) return n;
  }
  throw MismatchBeyondDepth("prefixes agree through depth " + std::to_string(a.depth()));
}

std::size_t word_count(std::size_t alphabet_size, std::size_t length) {
  std::size_t count = 1;
  for (std::size_t n = 0; n < length; ++n) {
    if (alphabet_size != 0 && count > std::numeric_limits<std::size_t>::max() / alphabet_size) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= alphabet_size;
  }
  return count;
}

std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t length, std::size_t cap) {
  std::size_t count = word_count(alphabet.size(), length);
  if (count > cap) {
    throw CapExceeded("depth too large: " + std::to_string(alphabet.size()) + "^" + std::to_string(length) +
                      " words exceeds cap " + std::to_string(cap));
  }
  std::vector<Word> out;
  out.reserve(count);
  std::vector<std::size_t> digits(length, 0);
  for (std::size_t w = 0; w < count; ++w) {
    std::vector<std::string> letters(length);
    for (std::size_t n = 0; n < length; ++n) letters[n] = alphabet[digits[n]];
    out.emplace_back(std::move(letters));
    for (std::size_t n = length; n-- > 0;) {
      if (++digits[n] < alphabet.size()) break;
      digits[n] = 0;
    }
  }
  return out;
}

}  // namespace hlab
