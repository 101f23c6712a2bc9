#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hlab/affine.hpp"
#include "hlab/attractor.hpp"
#include "hlab/expr.hpp"
#include "hlab/ifs.hpp"
#include "hlab/verify.hpp"

namespace hlab {
namespace {

using testing::Rng;
using testing::cantor;
using testing::data_path;

AffineContraction scalar_map(double a, double b) { return AffineContraction(1, {a}, {b}, std::abs(a)); }

PointCloud line(std::initializer_list<double> xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(Point{x});
  return PointCloud(pts);
}

TEST(AffineContraction, ValidatesLipschitzBound) {
  EXPECT_NO_THROW(AffineContraction(2, {0.5, 0, 0, 0.25}, {0, 0}, 0.5));
  EXPECT_THROW(AffineContraction(2, {0.5, 0, 0, 0.25}, {0, 0}, 0.3), InvalidArgument);
  EXPECT_THROW(AffineContraction(1, {0.5}, {0}, 1.0), InvalidArgument);
  EXPECT_THROW(AffineContraction(1, {0.5}, {0}, 0.5, 0.6), InvalidArgument);
  EXPECT_THROW(AffineContraction(2, {0.5, 0, 0, 0.25}, {0, 0}, 0.5, 0.4), InvalidArgument);
  EXPECT_THROW(AffineContraction(2, {0.5, 0}, {0, 0}, 0.5), InvalidArgument);
}

TEST(ApplyMap, Examples) {
  EXPECT_EQ(apply_map(scalar_map(1.0 / 3, 0), line({0, 1})), line({0, 1.0 / 3}));
  AffineContraction constant(2, {0, 0, 0, 0}, {0.25, 0.5}, 0.0);
  Rng rng(30);
  EXPECT_EQ(apply_map(constant, testing::random_cloud(rng, 2, 20)),
            PointCloud({Point{0.25, 0.5}}));
  EXPECT_EQ(apply_map(scalar_map(1.0 / 3, 2.0 / 3), line({0})), line({2.0 / 3}));
}

TEST(AffineContraction, ImageBoxEnclosesImagesOfSamples) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 1 + testing::pick(rng, 3);
    AffineContraction f = testing::random_contraction(rng, d);
    std::vector<double> lo(d), hi(d);
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = testing::uniform(rng, -2, 0);
      hi[k] = lo[k] + testing::uniform(rng, 0, 2);
    }
    Box box(lo, hi);
    Box img = f.image(box);
    for (int s = 0; s < 20; ++s) {
      std::vector<double> x(d), y(d);
      for (std::size_t k = 0; k < d; ++k) x[k] = s == 0 ? lo[k] : s == 1 ? hi[k] : testing::uniform(rng, lo[k], hi[k]);
      f.apply(x, y);
      EXPECT_TRUE(img.contains(y));
    }
  }
}

TEST(AffineContraction, CompositionMultipliesBoundsAndAgreesPointwise) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 1 + testing::pick(rng, 2);
    AffineContraction f = testing::random_contraction(rng, d);
    AffineContraction g = testing::random_contraction(rng, d);
    AffineContraction fg = compose(f, g);
    EXPECT_DOUBLE_EQ(fg.lip_bound(), f.lip_bound() * g.lip_bound());
    EXPECT_LE(operator_norm_estimate(d, fg.matrix()), fg.lip_bound() + 1e-12);
    std::vector<double> x(d);
    for (double& v : x) v = testing::uniform(rng, -1, 1);
    Point direct = fg(Point(x));
    Point nested = f(g(Point(x)));
    EXPECT_LE(point_dist(direct, nested), 1e-14);
  }
}

TEST(ExactAffine1D, FixedPointAndComposition) {
  ExactAffine1D f1{Rational(1, 3), 0};
  ExactAffine1D f2{Rational(1, 3), Rational(2, 3)};
  EXPECT_EQ(compose(f1, f2), (ExactAffine1D{Rational(1, 9), Rational(2, 9)}));
  EXPECT_EQ(compose(f1, f2).fixed_point(), Rational(1, 4));
  EXPECT_EQ(f2.image(ExactInterval{0, 1}), (ExactInterval{Rational(2, 3), 1}));
  ExactAffine1D flip{Rational(-1, 2), 1};
  EXPECT_EQ(flip.image(ExactInterval{0, 1}), (ExactInterval{Rational(1, 2), 1}));
}

TEST(ParseRational, DecimalFractionAndExponentForms) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-1/8"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("0.05/0.5"), Rational(1, 10));
  EXPECT_EQ(parse_rational("0"), Rational(0));
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("0x10"), InvalidArgument);
  EXPECT_THROW(parse_rational(""), InvalidArgument);
}

TEST(Expr, EvaluatesExactly) {
  Expr e = Expr::parse("(m+1)/2^(2*m-1)");
  EXPECT_EQ(e.eval(1), Rational(1));
  EXPECT_EQ(e.eval(3), Rational(4, 32));
  EXPECT_EQ(Expr::parse("-m^2 + 1/3").eval(2), Rational(-11, 3));
  EXPECT_EQ(Expr::parse("0.25*m").eval(2), Rational(1, 2));
  EXPECT_EQ(Expr::parse("010.5").eval(0), Rational(21, 2));
  EXPECT_EQ(Expr::parse("2^-3").eval(0), Rational(1, 8));
}

TEST(Expr, ReportsSyntaxErrorsWithColumn) {
  try {
    Expr::parse("1 + * m");
    FAIL() << "expected a SpecError";
  } catch (const SpecError& e) {
    EXPECT_EQ(e.where(), "col 5");
  }
  EXPECT_THROW(Expr::parse("x"), SpecError);
  EXPECT_THROW(Expr::parse("1/(m-1)").eval(1), InvalidArgument);
  EXPECT_THROW(Expr::parse("2^(1/2)").eval(0), InvalidArgument);
}

TEST(IifsSpec, LoadsExactCantorPair) {
  IifsSpec s = cantor();
  EXPECT_EQ(s.dim(), 1u);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.is_exact());
  EXPECT_EQ(s.alphabet(), (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(*s.contraction_c_exact(), Rational(1, 3));
  EXPECT_DOUBLE_EQ(s.contraction_c(), 1.0 / 3);
  EXPECT_DOUBLE_EQ(*s.bilip_lower(), 1.0 / 3);
  EXPECT_EQ(s.map("2").exact->intercept, Rational(2, 3));
  EXPECT_THROW(s.index_of("3"), InvalidArgument);
  EXPECT_FALSE(IifsSpec::load(data_path("cantor_float.json")).is_exact());
}

TEST(IifsSpec, JsonRoundTripKeepsFingerprint) {
  for (const char* name : {"cantor.json", "three_corners.json", "dyadic_family.json", "single.json"}) {
    IifsSpec s = IifsSpec::load(data_path(name));
    IifsSpec again = IifsSpec::from_json(s.to_json());
    EXPECT_EQ(again.fingerprint(), s.fingerprint()) << name;
    EXPECT_EQ(again.size(), s.size());
    EXPECT_EQ(s.fingerprint().size(), 16u);
  }
  EXPECT_NE(cantor().fingerprint(), IifsSpec::load(data_path("cantor_float.json")).fingerprint());
}

TEST(IifsSpec, ErrorsNameTheLocation) {
  try {
    IifsSpec::load(data_path("malformed.json"));
    FAIL() << "expected a SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(e.where().find(":6:3"), std::string::npos) << e.where();
  }
  try {
    IifsSpec::load(data_path("not_contractive.json"));
    FAIL() << "expected a SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(e.where().find("maps[0]"), std::string::npos) << e.where();
  }
  EXPECT_THROW(IifsSpec::parse(R"({"box": [[0, 1]], "maps": []})"), SpecError);
  EXPECT_THROW(IifsSpec::parse(R"({"box": [[0, 1]], "maps": [{"matrix": [[0.5]], "offset": [0.9]}]})"), SpecError);
  EXPECT_THROW(IifsSpec::parse(R"({"box": [[0, 1]], "maps": [{"index": "a", "matrix": [[0.5]], "offset": [0]},
                                                              {"index": "a", "matrix": [[0.5]], "offset": [0.5]}]})"),
               SpecError);
}

TEST(IifsSpec, FamilyTruncationAndMembers) {
  IifsSpec s = IifsSpec::load(data_path("dyadic_family.json"));
  EXPECT_EQ(s.size(), 8u);
  EXPECT_EQ(s.truncation(), 8u);
  EXPECT_EQ(s.map("1").exact->slope, Rational(1, 2));
  EXPECT_EQ(s.map("3").exact->intercept, Rational(1, 32));
  IifsSpec longer = s.with_truncation(12);
  EXPECT_EQ(longer.size(), 12u);
  EXPECT_THROW(cantor().with_truncation(3), InvalidArgument);
}

TEST(ComposeWord, Examples) {
  IifsSpec s = cantor();
  AffineContraction id = compose_word(s, Word());
  EXPECT_EQ(id.entry(0, 0), 1.0);
  EXPECT_EQ(id.offset()[0], 0.0);
  ExactAffine1D f12 = compose_word_exact(s, Word::parse("1.2"));
  EXPECT_EQ(f12, (ExactAffine1D{Rational(1, 9), Rational(2, 9)}));
  AffineContraction f1 = compose_word(s, Word::parse("1"));
  EXPECT_EQ(f1.entry(0, 0), s.map("1").map.entry(0, 0));
  EXPECT_EQ(f1.offset()[0], s.map("1").map.offset()[0]);
}

TEST(ComposeWord, MatchesLetterByLetterApplication) {
  Rng rng(33);
  IifsSpec s = IifsSpec::load(data_path("three_corners.json"));
  for (int trial = 0; trial < 100; ++trial) {
    WordPrefix w = testing::random_prefix(rng, s.alphabet(), testing::pick(rng, 8));
    Point x{testing::uniform(rng, 0, 1), testing::uniform(rng, 0, 1)};
    Point nested = x;
    for (std::size_t k = w.depth(); k-- > 0;) nested = s.map(w[k]).map(nested);
    EXPECT_LE(point_dist(compose_word(s, w.word())(x), nested), 1e-14);
    EXPECT_TRUE(image_enclosure(s, w.word(), s.box()).contains(nested.coords()));
  }
}

TEST(NonOverlapping, CantorHoldsWithMarginOneThird) {
  PropertyReport r = check_non_overlapping(cantor());
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.margin_exact(), "1/3");
  EXPECT_DOUBLE_EQ(r.margin(), 1.0 / 3);
}

TEST(NonOverlapping, IdenticalMapsFailWithBothIndices) {
  PropertyReport r = check_non_overlapping(IifsSpec::load(data_path("overlapping.json")));
  ASSERT_TRUE(r.fails());
  ASSERT_TRUE(r.witness());
  EXPECT_EQ(r.witness()->items[0], "1");
  EXPECT_EQ(r.witness()->items[1], "2");
}

TEST(NonOverlapping, DyadicFamilyImagesAreDisjoint) {
  IifsSpec s = IifsSpec::load(data_path("dyadic_family.json"));
  PropertyReport r = check_non_overlapping(s);
  EXPECT_TRUE(r.holds());
  // Smallest gap sits between the last two members: 1/2^13 - 1/2^14.
  EXPECT_EQ(r.margin_exact(), "1/16384");
}

TEST(NonOverlapping, FloatSystemsAndShrinkingBoxes) {
  EXPECT_TRUE(check_non_overlapping(IifsSpec::load(data_path("cantor_float.json"))).holds());
  IifsSpec tri = IifsSpec::load(data_path("three_corners.json"));
  PropertyReport whole = check_non_overlapping(tri);
  EXPECT_TRUE(whole.holds());
  PropertyReport inner = check_non_overlapping(tri, Box({0.25, 0.25}, {0.75, 0.75}));
  EXPECT_TRUE(inner.holds());
  EXPECT_GE(inner.margin(), whole.margin());
  EXPECT_TRUE(check_non_overlapping(IifsSpec::load(data_path("sierpinski.json"))).fails());
}

TEST(NonOverlapping, RandomSystemsAgreeWithExactIntervalOracle) {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ExactAffine1D> maps;
    std::size_t n = 2 + testing::pick(rng, 3);
    for (std::size_t k = 0; k < n; ++k) {
      Rational slope(static_cast<long>(testing::pick(rng, 7)) - 3, 8);
      Rational lo(static_cast<long>(testing::pick(rng, 9)), 16);
      Rational width = abs(slope);
      maps.push_back({slope, slope >= 0 ? lo : lo + width});
    }
    IifsSpec s = IifsSpec::exact_1d(ExactInterval{0, 1}, maps);
    bool disjoint = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        ExactInterval a = maps[i].image({0, 1});
        ExactInterval b = maps[j].image({0, 1});
        if (!(a.hi < b.lo || b.hi < a.lo)) disjoint = false;
      }
    }
    EXPECT_EQ(check_non_overlapping(s).holds(), disjoint);
    EXPECT_EQ(check_non_overlapping(s).fails(), !disjoint);
  }
}

TEST(StronglyNonOverlapping, CantorDepthThree) {
  PropertyReport r = check_strongly_non_overlapping(cantor(), 3);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.margin_exact(), "1/27");
  EXPECT_EQ(r.details()["words"], 14);
  EXPECT_FALSE(r.note().empty());
}

TEST(StronglyNonOverlapping, OverlapAndSingleMap) {
  EXPECT_TRUE(check_strongly_non_overlapping(IifsSpec::load(data_path("overlapping.json")), 1).fails());
  PropertyReport single = check_strongly_non_overlapping(IifsSpec::load(data_path("single.json")), 4);
  EXPECT_TRUE(single.holds());
  EXPECT_THROW(check_strongly_non_overlapping(cantor(), 12, 1000), CapExceeded);
}

TEST(StronglyNonOverlapping, MarginShrinksByCAtEachDepth) {
  IifsSpec s = cantor();
  for (std::size_t d = 1; d <= 6; ++d) {
    PropertyReport r = check_strongly_non_overlapping(s, d);
    ASSERT_TRUE(r.holds());
    EXPECT_EQ(parse_rational(*r.margin_exact()), pow(Rational(1, 3), static_cast<std::int64_t>(d)));
  }
  PropertyReport tri = check_strongly_non_overlapping(IifsSpec::load(data_path("three_corners.json")), 3);
  EXPECT_TRUE(tri.holds());
}

TEST(LocallyFinite, FiniteSystemsHold) {
  EXPECT_TRUE(check_locally_finite(cantor(), 1e-3).holds());
  EXPECT_TRUE(check_locally_finite(IifsSpec::load(data_path("three_corners.json")), 0.01).holds());
}

TEST(LocallyFinite, DyadicFamilyFailsAtZero) {
  PropertyReport r = check_locally_finite(IifsSpec::load(data_path("dyadic_family.json")), 1e-3);
  ASSERT_TRUE(r.fails());
  EXPECT_EQ(r.witness()->items.at(0), "y=0");
  PropertyReport untailed = check_locally_finite(IifsSpec::load(data_path("dyadic_family_untailed.json")), 1e-3);
  EXPECT_EQ(untailed.verdict(), Verdict::inconclusive);
}

TEST(Ssc, CantorConstantsApproachOneThird) {
  IifsSpec s = cantor();
  double previous_gap = INFINITY;
  for (std::size_t n : {4u, 7u, 10u}) {
    IterationOptions opts;
    opts.steps = n;
    AttractorApprox a = iterate_attractor(s, opts);
    SscConstants k = ssc_constants(s, a);
    EXPECT_LE(std::abs(k.sep_c - 1.0 / 3), k.slack + 1e-12);
    double gap = std::abs(k.sep_c - 1.0 / 3);
    EXPECT_LE(gap, previous_gap + 1e-15);
    previous_gap = gap;
    EXPECT_EQ(k.at(0, 1), k.at(1, 0));
    EXPECT_EQ(k.at(0, 0), INFINITY);
  }
  IterationOptions opts;
  opts.steps = 10;
  EXPECT_TRUE(check_ssc(s, iterate_attractor(s, opts)).holds());
}

TEST(Ssc, OverlapAndSingleMap) {
  IifsSpec both = IifsSpec::load(data_path("overlapping.json"));
  SscConstants k = ssc_constants(both, iterate_attractor(both, IterationOptions{}));
  EXPECT_EQ(k.at(0, 1), 0.0);
  EXPECT_TRUE(check_ssc(both, iterate_attractor(both, IterationOptions{})).fails());
  IifsSpec single = IifsSpec::load(data_path("single.json"));
  SscConstants one = ssc_constants(single, iterate_attractor(single, IterationOptions{}));
  EXPECT_EQ(one.sep_c, INFINITY);
  EXPECT_EQ(one.to_json()["sep_c"], "inf");
}

TEST(Ssc, BruteForceOracleOnRandomClouds) {
  Rng rng(35);
  IifsSpec s = IifsSpec::load(data_path("three_corners.json"));
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud a = testing::random_cloud(rng, 2, 30, 0.0, 1.0);
    SscConstants k = ssc_constants(s, a, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        double best = INFINITY;
        for (std::size_t p = 0; p < a.size(); ++p) {
          for (std::size_t q = 0; q < a.size(); ++q) {
            best = std::min(best, point_dist(s.maps()[i].map(a.point(p)), s.maps()[j].map(a.point(q))));
          }
        }
        EXPECT_DOUBLE_EQ(k.at(i, j), best);
      }
    }
  }
}

}  // namespace
}  // namespace hlab
