#include <gtest/gtest.h>

#include <random>

#include "anisocalc/dsl.hpp"
#include "anisocalc/errors.hpp"
#include "anisocalc/spaces.hpp"

using namespace anisocalc;

namespace {

const Prelude kPre = Prelude::for_dimension(3);

SpaceDescr sp(const std::string& text) { return parse_space(text, kPre); }

}  // namespace

TEST(Normalize, WeightedIdentifications) {
  EXPECT_EQ(normalize(sp("W^{2,(2,1)}_3(R^{1x2})")).scale, Scale::H);
  SpaceDescr b = normalize(sp("W^{1/2,(2,1)}_2(R^{1x2})"));
  EXPECT_EQ(b.scale, Scale::B);
  EXPECT_FALSE(b.y.has_value());
  try {
    normalize(sp("W^{3,(2,1)}_3(R^{1x2})"));
    FAIL() << "expected NotIdentifiable";
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIdentifiable);
  }
  EXPECT_EQ(normalize(sp("W^{0}_2(R)")).scale, Scale::L);
  EXPECT_EQ(normalize(sp("B^{1}_2_2(R)")).y, std::nullopt);
}

TEST(Normalize, TargetHypotheses) {
  Prelude pre = kPre;
  pre.load("target X umd\ntarget Y alpha\n");
  try {
    normalize(parse_space("W^{1,(2,1)}_2(R^{1x2};X)", pre));
    FAIL();
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolation);
  }
  EXPECT_THROW(normalize(parse_space("H^{1}_2(R;Y)", pre)), EngineError);
  EXPECT_NO_THROW(normalize(parse_space("H^{1}_2(R;X)", pre)));
}

TEST(Index, Formulas) {
  EXPECT_EQ(sobolev_index(sp("W^{1-1/p,(2,1)}_p(JxSigma)")), (AffineExpr{Rational(1, 2), Rational(-5, 2)}));
  EXPECT_EQ(sobolev_index(sp("L_p(R^3)")), (AffineExpr{Rational(0), Rational(-3)}));
  EXPECT_EQ(sobolev_index(sp("H^{2,(2,1)}_2(R^{1x3})")).constant, Rational(1) - Rational(5, 4));
  try {
    sobolev_index(sp("C0(R)"));
    FAIL();
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(Index, NormalizationPreservesIndexAndMonotone) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(1, 23), w(1, 3), dim(1, 3);
  for (int i = 0; i < 2000; ++i) {
    SpaceDescr u;
    u.scale = Scale::W;
    u.aniso = Anisotropy::make({dim(rng), dim(rng)}, {w(rng), w(rng)});
    u.s = AffineExpr(Rational(num(rng), 4));
    u.x = AffineExpr(Rational(num(rng), 24));
    AffineExpr ind = sobolev_index(u);
    try {
      EXPECT_EQ(sobolev_index(normalize(u)), ind);
    } catch (const EngineError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotIdentifiable);
    }
    SpaceDescr smoother = u, rougher = u;
    smoother.s = u.s + AffineExpr(Rational(1, 8));
    rougher.x = u.x + AffineExpr(Rational(1, 48));
    EXPECT_LT(ind.constant, sobolev_index(smoother).constant);
    EXPECT_GT(ind.constant, sobolev_index(rougher).constant);
  }
}

TEST(Intersection, ParabolicForms) {
  auto slice = [](int k, int dim, Scale scale, AffineExpr s, const std::string& dom) {
    SpaceDescr d;
    d.scale = scale;
    d.s = s;
    d.x = AffineExpr::variable();
    d.aniso = Anisotropy::isotropic(dim);
    d.domain = dom;
    return SliceSpace{k, d};
  };
  SpaceDescr h = recognize_intersection({slice(1, 1, Scale::H, AffineExpr(1), "J"), slice(2, 3, Scale::H, AffineExpr(2), "Rdot")},
                                        std::nullopt, "JxRdot");
  EXPECT_EQ(h, sp("H^{2,(2,1)}_p(JxRdot)"));
  SpaceDescr w = recognize_intersection({slice(1, 1, Scale::W, {Rational(1, 2), Rational(-1, 2)}, "J"),
                                         slice(2, 2, Scale::W, {Rational(1), Rational(-1)}, "Sigma")},
                                        std::nullopt, "JxSigma");
  EXPECT_EQ(w, sp("W^{1-1/p,(2,1)}_p(JxSigma)"));
  SpaceDescr single = sp("B^{3/2}_p(R^2)");
  EXPECT_EQ(recognize_intersection({{1, single}}, std::nullopt, "R^2"), single);
  try {
    recognize_intersection({slice(1, 1, Scale::W, {Rational(1, 2), Rational(-1, 2)}, "J"),
                            slice(2, 2, Scale::W, {Rational(1), Rational(-1, 3)}, "Sigma")});
    FAIL();
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAnIntersectionForm);
  }
}

TEST(Intersection, ExpandThenRecognizeIsIdentity) {
  for (const char* text : {"W^{5/2-1/p,(2,1)}_p(JxSigma)", "H^{2,(2,1)}_p(JxRdot)", "B^{3,(3,1)}_4(R^{1x2})",
                           "W^{2-2/p,(4,1)}_p(JxSigma)"}) {
    SpaceDescr u = sp(text);
    SpaceDescr back = recognize_intersection(expand_intersection(u), u.aniso.weights, u.domain);
    EXPECT_EQ(back, u) << text;
  }
}

TEST(Signatures, Families) {
  const auto& reg = SignatureRegistry::defaults();
  TargetSpace r = TargetSpace::scalar(), lp = TargetSpace::lebesgue("Lp");
  EXPECT_TRUE(reg.admits({r, r}, r));
  EXPECT_TRUE(reg.admits({r, lp}, lp));
  EXPECT_FALSE(reg.admits({lp, lp}, lp));
  SignatureRegistry custom;
  custom.add({{"Lp", "Lp"}, "Lp"});
  EXPECT_TRUE(custom.admits({lp, lp}, lp));
}
