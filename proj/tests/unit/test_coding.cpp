#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hlab/attractor.hpp"
#include "hlab/coding.hpp"

namespace hlab {
namespace {

using testing::Rng;
using testing::cantor;
using testing::data_path;

const CodingMap& cantor_pi() {
  static const CodingMap pi = [] {
    IterationOptions opts;
    opts.steps = 12;
    IifsSpec s = cantor();
    return CodingMap(s, iterate_attractor(s, opts));
  }();
  return pi;
}

CodingMap coding_for(const std::string& file, std::size_t steps) {
  IifsSpec s = IifsSpec::load(data_path(file));
  IterationOptions opts;
  opts.steps = steps;
  return CodingMap(s, iterate_attractor(s, opts));
}

WordPrefix repeated(const std::string& letter, std::size_t n) {
  return WordPrefix(Word(std::vector<std::string>(n, letter)));
}

// Ternary-digit oracle for the middle-thirds coding: letter 2 contributes
// 2/3^n at position n.
Rational ternary_value(const WordPrefix& w) {
  Rational x = 0;
  Rational scale = Rational(1, 3);
  for (std::size_t n = 0; n < w.depth(); ++n) {
    if (w[n] == "2") x += 2 * scale;
    scale /= 3;
  }
  return x;
}

TEST(CodePoint, ConstantWordsGoToEndpoints) {
  const CodingMap& pi = cantor_pi();
  for (std::size_t m : {1u, 5u, 12u}) {
    CodedPoint zero = pi.code(repeated("1", m));
    EXPECT_EQ(zero.point[0], 0.0);
    EXPECT_LE(zero.error_bound, std::pow(3.0, -static_cast<double>(m)) * pi.delta_upper() * (1 + 1e-12));
    CodedPoint one = pi.code(repeated("2", m));
    EXPECT_EQ(one.point[0], 1.0);
  }
}

TEST(CodePoint, OneThenTwosApproachesOneThird) {
  const CodingMap& pi = cantor_pi();
  std::vector<std::string> letters(12, "2");
  letters[0] = "1";
  CodedPoint p = pi.code(WordPrefix(Word(letters)));
  EXPECT_LE(std::abs(p.point[0] - 1.0 / 3), p.error_bound);
  EXPECT_LE(p.error_bound, 3e-6);
}

TEST(CodePoint, EmptyPrefixCarriesTheDiameter) {
  const CodingMap& pi = cantor_pi();
  CodedPoint p = pi.code(WordPrefix());
  EXPECT_EQ(p.error_bound, pi.delta_upper());
  EXPECT_GE(pi.delta_upper(), 1.0);
  EXPECT_LE(pi.delta_upper(), 1.0 + 1e-5);
  EXPECT_EQ(p.to_json()["depth"], 0);
}

TEST(CodePoint, EveryExtensionLimitLiesWithinTheBound) {
  Rng rng(51);
  const CodingMap& pi = cantor_pi();
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t m = testing::pick(rng, 14);
    WordPrefix w = testing::random_prefix(rng, {"1", "2"}, m + 40);
    WordPrefix head(w.word().prefix(m));
    CodedPoint p = pi.code(head);
    // The depth m+40 value is within 3^-(m+40) of the limit point.
    double limit = to_double(ternary_value(w));
    EXPECT_LE(std::abs(p.point[0] - limit), p.error_bound + 1e-16) << head.word().literal();
  }
}

TEST(CodePoint, FloatSystemsStayInsideTheirCylinderBoxes) {
  Rng rng(52);
  CodingMap pi = coding_for("three_corners.json", 6);
  for (int trial = 0; trial < 200; ++trial) {
    WordPrefix w = testing::random_prefix(rng, pi.spec().alphabet(), 1 + testing::pick(rng, 10));
    CodedPoint p = pi.code(w);
    Box box = image_enclosure(pi.spec(), w.word(), pi.spec().box());
    EXPECT_TRUE(box.contains(p.point.coords(), p.cylinder_slack));
    CodedPoint from_corner = pi.code(w, Point{0.0, 0.0});
    EXPECT_LE(point_dist(p.point, from_corner.point), p.error_bound + from_corner.error_bound);
  }
}

TEST(Semiconjugacy, Examples) {
  const CodingMap& pi = cantor_pi();
  PropertyReport twos = check_semiconjugacy(pi, {{"1", repeated("2", 12)}});
  EXPECT_TRUE(twos.holds());
  EXPECT_LE(twos.details()["max_residual"].get<double>(), 2 * std::pow(3.0, -12));
  PropertyReport ones = check_semiconjugacy(pi, {{"1", repeated("1", 12)}});
  EXPECT_TRUE(ones.holds());
  EXPECT_EQ(ones.details()["max_residual"], 0.0);
  EXPECT_THROW(check_semiconjugacy(pi, {}), InvalidArgument);
}

TEST(Semiconjugacy, RandomSamplesOnBothSystems) {
  Rng rng(53);
  for (const char* file : {"cantor.json", "cantor_float.json", "three_corners.json"}) {
    CodingMap pi = coding_for(file, 8);
    std::vector<SemiconjugacySample> samples;
    for (int k = 0; k < 100; ++k) {
      samples.push_back({pi.spec().alphabet()[testing::pick(rng, pi.spec().size())],
                         testing::random_prefix(rng, pi.spec().alphabet(), 12)});
    }
    PropertyReport r = check_semiconjugacy(pi, samples);
    EXPECT_TRUE(r.holds()) << file << " " << r.to_json().dump();
  }
}

TEST(PiLipschitz, Examples) {
  const CodingMap& pi = cantor_pi();
  WordPrefix a = repeated("1", 12);
  EXPECT_TRUE(check_pi_lipschitz(pi, {{a, a}}).holds());
  PropertyReport ends = check_pi_lipschitz(pi, {{a, repeated("2", 12)}});
  EXPECT_TRUE(ends.holds());
  // d = 1 against d_upper = 1/2: ratio 2 <= 3.
  EXPECT_LE(ends.details()["max_ratio"].get<double>(), 3.0);
}

TEST(PiLipschitz, RandomPairsRespectThreeDelta) {
  Rng rng(54);
  for (const char* file : {"cantor.json", "three_corners.json"}) {
    CodingMap pi = coding_for(file, 8);
    std::vector<PrefixPair> pairs;
    for (int k = 0; k < 500; ++k) {
      std::size_t d = testing::pick(rng, 13);
      pairs.emplace_back(testing::random_prefix(rng, pi.spec().alphabet(), d),
                         testing::random_prefix(rng, pi.spec().alphabet(), d));
    }
    EXPECT_TRUE(check_pi_lipschitz(pi, pairs).holds()) << file;
  }
}

TEST(PiLipschitz, RequiresCAtMostOneThird) {
  CodingMap pi = coding_for("sierpinski.json", 4);
  WordPrefix a = repeated("1", 3);
  EXPECT_THROW(check_pi_lipschitz(pi, {{a, a}}), PreconditionFailed);
}

TEST(Injectivity, CantorDepthTwo) {
  PropertyReport r = injectivity_search(cantor_pi(), 2);
  ASSERT_TRUE(r.holds());
  EXPECT_EQ(r.details()["pairs"], 6);
  EXPECT_GE(r.margin(), 1.0 / 9 - 1e-12);
  EXPECT_GE(r.details()["min_cylinder_gap"].get<double>(), 1.0 / 9 - 1e-12);
}

TEST(Injectivity, SingleMapAndOverlap) {
  EXPECT_TRUE(injectivity_search(coding_for("single.json", 4), 3).holds());
  EXPECT_THROW(injectivity_search(coding_for("overlapping.json", 4), 2), PreconditionFailed);
}

TEST(Injectivity, DeeperAndTwoDimensional) {
  EXPECT_TRUE(injectivity_search(cantor_pi(), 8).holds());
  EXPECT_TRUE(injectivity_search(coding_for("three_corners.json", 6), 4).holds());
}

TEST(ModulusDelta, PowersOfThreeAreExactExponents) {
  EXPECT_NEAR(modulus_delta(1.0 / 3, 1.0 / 3, Rational(1, 9)), 1.0 / 27, 1e-15);
  EXPECT_LE(modulus_delta(1.0 / 3, 1.0 / 3, Rational(1, 9)), 1.0 / 27);
  EXPECT_NEAR(modulus_delta(0.5, 0.25, Rational(1, 3)), 0.125, 1e-15);
  // log_3(1/10) is not an integer: 0.5 * 0.25^(log_3 10)
  EXPECT_NEAR(modulus_delta(0.5, 0.25, Rational(1, 10)), 0.5 * std::pow(0.25, std::log(10.0) / std::log(3.0)), 1e-12);
  EXPECT_EQ(modulus_delta(INFINITY, 0.5, Rational(1, 3)), INFINITY);
  EXPECT_THROW(modulus_delta(0.5, 0.5, Rational(1)), InvalidArgument);
  EXPECT_THROW(modulus_delta(0.5, 0.0, Rational(1, 3)), InvalidArgument);
}

TEST(InverseModulus, ExhaustiveOnCantor) {
  const CodingMap& pi = cantor_pi();
  for (Rational eps : {Rational(1, 3), Rational(1, 9), Rational(1, 27)}) {
    PropertyReport r = inverse_modulus_exhaustive(pi, eps, 7);
    EXPECT_TRUE(r.holds()) << to_string(eps);
    EXPECT_EQ(r.details()["pairs"], 128 * 128);
    EXPECT_GE(r.details()["antecedents_true"].get<std::size_t>(), 128u);
    PropertyReport pointwise = inverse_modulus_exhaustive(pi, eps, 5, ModulusOptions{true});
    EXPECT_TRUE(pointwise.holds());
  }
}

TEST(InverseModulus, SampledPairs) {
  const CodingMap& pi = cantor_pi();
  WordPrefix a = repeated("1", 10);
  PropertyReport same = inverse_modulus_check(pi, Rational(1, 9), {{a, a}});
  EXPECT_TRUE(same.holds());
  EXPECT_EQ(same.details()["antecedents_true"], 1);
  PropertyReport far = inverse_modulus_check(pi, Rational(1, 9), {{a, repeated("2", 10)}});
  EXPECT_TRUE(far.holds());
  EXPECT_EQ(far.details()["antecedents_true"], 0);
}

TEST(InverseModulus, PreconditionsAreEnforced) {
  CodingMap both = coding_for("overlapping.json", 4);
  WordPrefix a = repeated("1", 3);
  EXPECT_THROW(inverse_modulus_check(both, Rational(1, 3), {{a, a}}), PreconditionFailed);
}

TEST(Disconnectedness, CantorGroups) {
  const CodingMap& pi = cantor_pi();
  PropertyReport three = disconnectedness_probe(pi, 3);
  ASSERT_TRUE(three.holds());
  EXPECT_EQ(three.details()["groups"], 8);
  EXPECT_GE(three.margin(), 1.0 / 27 - 1e-5);
  PropertyReport one = disconnectedness_probe(pi, 1);
  ASSERT_TRUE(one.holds());
  EXPECT_EQ(one.details()["groups"], 2);
  EXPECT_NEAR(one.margin(), 1.0 / 3, 1e-5);
}

TEST(Disconnectedness, SingleMapDoesNotApply) {
  PropertyReport r = disconnectedness_probe(coding_for("single.json", 4), 2);
  EXPECT_EQ(r.verdict(), Verdict::inconclusive);
  EXPECT_EQ(r.details()["groups"], 1);
}

}  // namespace
}  // namespace hlab
