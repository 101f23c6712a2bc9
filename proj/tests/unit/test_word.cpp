#include <gtest/gtest.h>

#include "generators.hpp"
#include "hlab/word.hpp"

namespace hlab {
namespace {

using testing::Rng;

WordPrefix prefix(std::string_view literal) { return WordPrefix(Word::parse(literal)); }

Rational third_power(std::size_t n) {
  Rational q = 1;
  for (std::size_t k = 0; k < n; ++k) q /= 3;
  return q;
}

// Independent oracle: positional sum with the tail sum_{n>N} 3^-n written out
// as a long partial sum plus its own remainder.
MetricBounds oracle_metric(const WordPrefix& a, const WordPrefix& b) {
  Rational lower = 0;
  for (std::size_t n = 0; n < a.depth(); ++n) {
    if (a[n] != b[n]) lower += third_power(n + 1);
  }
  Rational tail = 0;
  for (std::size_t n = a.depth() + 1; n <= a.depth() + 60; ++n) tail += third_power(n);
  tail += third_power(a.depth() + 60) / 2;
  return {lower, lower + tail};
}

TEST(WordLiteral, ParsesAndPrints) {
  EXPECT_TRUE(Word::parse("").empty());
  Word w = Word::parse("1.2.1");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1], "2");
  EXPECT_EQ(w.literal(), "1.2.1");
  EXPECT_EQ(Word::parse("12").size(), 1u);
  EXPECT_EQ(Word::parse("ab.c").size(), 2u);
  EXPECT_THROW(Word::parse("1..2"), InvalidArgument);
}

TEST(WordMetric, IdenticalPrefixesOnlyHaveTheTail) {
  for (std::size_t n : {0u, 1u, 4u, 10u}) {
    WordPrefix a(Word(std::vector<std::string>(n, "1")));
    MetricBounds m = word_metric(a, a);
    EXPECT_EQ(m.lower, 0);
    EXPECT_EQ(m.upper, third_power(n) / 2);
  }
}

TEST(WordMetric, FirstPositionDifferenceWeighsOneThird) {
  MetricBounds m = word_metric(prefix("1.1.1.1"), prefix("2.1.1.1"));
  EXPECT_EQ(m.lower, Rational(1, 3));
  EXPECT_EQ(m.upper, Rational(1, 3) + Rational(1, 162));
}

TEST(WordMetric, DifferingEverywhereApproachesOneHalf) {
  Rational previous = 0;
  for (std::size_t n = 1; n <= 30; ++n) {
    MetricBounds m = word_metric(WordPrefix(Word(std::vector<std::string>(n, "1"))),
                                 WordPrefix(Word(std::vector<std::string>(n, "2"))));
    EXPECT_EQ(m.upper, Rational(1, 2));
    EXPECT_EQ(m.lower, (1 - third_power(n)) / 2);
    EXPECT_GT(m.lower, previous);
    previous = m.lower;
  }
}

TEST(WordMetric, RejectsDepthMismatch) {
  EXPECT_THROW(word_metric(prefix("1"), prefix("1.2")), InvalidArgument);
}

TEST(WordMetric, MatchesPositionalOracle) {
  Rng rng(21);
  std::vector<std::string> alphabet{"1", "2", "3"};
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = testing::pick(rng, 16);
    WordPrefix a = testing::random_prefix(rng, alphabet, n);
    WordPrefix b = testing::random_prefix(rng, alphabet, n);
    MetricBounds got = word_metric(a, b);
    MetricBounds want = oracle_metric(a, b);
    EXPECT_EQ(got.lower, want.lower);
    EXPECT_EQ(got.upper, want.upper);
  }
}

TEST(WordMetric, BoundsNestUnderExtensionAndFormAMetric) {
  Rng rng(22);
  std::vector<std::string> alphabet{"a", "b"};
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = testing::pick(rng, 10);
    std::size_t k = 1 + testing::pick(rng, 6);
    WordPrefix a = testing::random_prefix(rng, alphabet, n + k);
    WordPrefix b = testing::random_prefix(rng, alphabet, n + k);
    WordPrefix c = testing::random_prefix(rng, alphabet, n + k);
    MetricBounds coarse = word_metric(WordPrefix(a.word().prefix(n)), WordPrefix(b.word().prefix(n)));
    MetricBounds fine = word_metric(a, b);
    EXPECT_LE(coarse.lower, fine.lower);
    EXPECT_LE(fine.upper, coarse.upper);
    EXPECT_LE(fine.lower, fine.upper);
    EXPECT_EQ(fine.lower, word_metric(b, a).lower);
    EXPECT_LE(fine.lower, word_metric(a, c).lower + word_metric(c, b).lower);
  }
}

TEST(RightShift, PrependsTheLetter) {
  EXPECT_EQ(right_shift("1", WordPrefix()), prefix("1"));
  EXPECT_EQ(right_shift("1", prefix("2.2")), prefix("1.2.2"));
  EXPECT_EQ(right_shift("1", prefix("2.2")).depth(), 3u);
}

TEST(RightShift, ShiftedMetricIsAThirdPlusOffset) {
  Rng rng(23);
  std::vector<std::string> alphabet{"1", "2"};
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = testing::pick(rng, 12);
    WordPrefix a = testing::random_prefix(rng, alphabet, n);
    WordPrefix b = testing::random_prefix(rng, alphabet, n);
    MetricBounds base = word_metric(a, b);
    MetricBounds same = word_metric(right_shift("1", a), right_shift("1", b));
    MetricBounds differ = word_metric(right_shift("1", a), right_shift("2", b));
    EXPECT_EQ(same.lower, base.lower / 3);
    EXPECT_EQ(same.upper, base.upper / 3);
    EXPECT_EQ(differ.lower, Rational(1, 3) + base.lower / 3);
  }
}

TEST(Concat, Examples) {
  EXPECT_EQ(concat(Word(), Word::parse("2")), Word::parse("2"));
  EXPECT_EQ(concat(Word::parse("1"), Word::parse("2")), Word::parse("1.2"));
  EXPECT_EQ(concat(Word::parse("1"), Word()), Word::parse("1"));
}

TEST(FirstMismatch, Examples) {
  EXPECT_EQ(first_mismatch(prefix("1.2"), prefix("1.3")), 1u);
  EXPECT_EQ(first_mismatch(prefix("1.2"), prefix("2.2")), 0u);
  EXPECT_THROW(first_mismatch(prefix("1.2"), prefix("1.2")), MismatchBeyondDepth);
}

TEST(WordPrefix, DeclaredDepthMustMatch) {
  EXPECT_NO_THROW(WordPrefix(Word::parse("1.2"), 2));
  EXPECT_THROW(WordPrefix(Word::parse("1.2"), 3), InvalidArgument);
}

TEST(AllWords, EnumeratesInAlphabetOrder) {
  std::vector<Word> words = all_words({"2", "1"}, 2, 100);
  ASSERT_EQ(words.size(), 4u);
  EXPECT_EQ(words[0], Word::parse("2.2"));
  EXPECT_EQ(words[1], Word::parse("2.1"));
  EXPECT_EQ(words[3], Word::parse("1.1"));
  EXPECT_EQ(all_words({"1"}, 0, 1).size(), 1u);
  EXPECT_THROW(all_words({"1", "2"}, 10, 1000), CapExceeded);
  EXPECT_EQ(word_count(2, 10), 1024u);
  EXPECT_EQ(word_count(10, 40), SIZE_MAX);
}

}  // namespace
}  // namespace hlab
