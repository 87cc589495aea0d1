#include <gtest/gtest.h>

#include <random>

#include "anisocalc/dsl.hpp"
#include "anisocalc/embed.hpp"
#include "anisocalc/errors.hpp"
#include "oracles.hpp"

using namespace anisocalc;

namespace {

const Prelude kPre = Prelude::for_dimension(3);
SpaceDescr sp(const std::string& text) { return parse_space(text, kPre); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const EngineError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Unsupported;
}

}  // namespace

TEST(Embeds, IntoContinuousFunctions) {
  Decision d = embeds(sp("W^{2-1/p,(2,1)}_p(JxSigma)").at(Rational(1, 4)), sp("C0^{(2,1)}(JxSigma)"));
  EXPECT_TRUE(d.covered());
  Decision low = embeds(sp("W^{2-1/p,(2,1)}_p(JxSigma)").at(Rational(1, 2)), sp("C0^{(2,1)}(JxSigma)"));
  EXPECT_FALSE(low.covered());
  ASSERT_NE(low.first_failure(), nullptr);
  EXPECT_FALSE(low.first_failure()->anchor.empty());
}

TEST(Embeds, IdentityAndCrossScale) {
  SpaceDescr h = sp("H^{2,(2,1)}_3(R^{1x3})");
  EXPECT_TRUE(embeds(h, h).covered());
  EXPECT_TRUE(embeds(sp("B^{3,(1,1)}_2_1(R^{1x1})"), sp("H^{2,(1,1)}_3(R^{1x1})")).covered());
  EXPECT_FALSE(embeds(sp("H^{1}_2(R)"), sp("H^{2}_2(R)")).covered());
  for (const auto& e : embeds(sp("H^{1}_2(R)"), sp("H^{2}_2(R)")).trace) EXPECT_FALSE(e.anchor.empty());
}

TEST(Embeds, IncompatibleSpaces) {
  EXPECT_EQ(kind_of([] { embeds(sp("H^{1}_2(R)"), sp("H^{1}_2(R^2)")); }), ErrorKind::IncompatibleSpaces);
}

TEST(SliceEmbed, Slices) {
  SpaceDescr b = sp("B^{2,(2,1)}_3(JxRdot)");
  SpaceDescr s1 = slice_embed(b, 1);
  EXPECT_EQ(s1.s, AffineExpr(1));
  EXPECT_EQ(s1.aniso.dims, std::vector<int>{1});
  EXPECT_EQ(s1.target.name, "L_p(R^{3},R)");
  SpaceDescr s2 = slice_embed(b, 2);
  EXPECT_EQ(s2.s, AffineExpr(2));
  EXPECT_EQ(s2.aniso.dims, std::vector<int>{3});
  SpaceDescr iso = sp("B^{1/2}_2(R^2)");
  EXPECT_EQ(slice_embed(iso, 1), iso);
  EXPECT_EQ(kind_of([&] { slice_embed(b, 3); }), ErrorKind::BadSlice);
  EXPECT_EQ(kind_of([] { slice_embed(sp("H^{2}_2(R)"), 1); }), ErrorKind::WrongScale);
}

TEST(Interpolation, ComplexIdentities) {
  EXPECT_EQ(interpolate_complex(sp("L^{(2,1)}_2(R^{1x2})"), sp("H^{4,(2,1)}_2(R^{1x2})"), Rational(1, 2)),
            sp("H^{2,(2,1)}_2(R^{1x2})"));
  EXPECT_EQ(interpolate_complex(sp("B^{1,(2,1)}_2(R^{1x2})"), sp("B^{3,(2,1)}_2(R^{1x2})"), Rational(1, 2)),
            sp("B^{2,(2,1)}_2(R^{1x2})"));
  EXPECT_EQ(interpolate_complex(sp("L_2(R)"), sp("L_6(R)"), Rational(1, 2)), sp("L_3(R)"));
  EXPECT_EQ(kind_of([] { interpolate_complex(sp("H^{1}_2(R)"), sp("B^{2}_2(R)"), Rational(1, 2)); }),
            ErrorKind::NoInterpolationRule);
}

TEST(Interpolation, RealIdentities) {
  EXPECT_EQ(interpolate_real(sp("H^{1,(2,1)}_3(R^{1x2})"), sp("H^{3,(2,1)}_3(R^{1x2})"), Rational(1, 2), Rational(1, 5)),
            sp("B^{2,(2,1)}_3_5(R^{1x2})"));
  EXPECT_EQ(kind_of([] {
              interpolate_real(sp("B^{1}_3_2(R)"), sp("B^{1}_3_4(R)"), Rational(1, 2), Rational(1, 5));
            }),
            ErrorKind::NoInterpolationRule);
  EXPECT_EQ(interpolate_real(sp("B^{0}_3_2(R)"), sp("B^{2}_3_4(R)"), Rational(1, 2), Rational(1, 6)),
            sp("B^{1}_3_6(R)"));
  // Coupled form: 1/p = (1-theta)/q_0 + theta/q_1 is required verbatim.
  EXPECT_EQ(kind_of([] { interpolate_real(sp("B^{0}_2_4(R)"), sp("B^{2}_4_4(R)"), Rational(1, 2), std::nullopt); }),
            ErrorKind::NoInterpolationRule);
}

TEST(Interpolation, ConvexCombinationsAreExact) {
  std::mt19937_64 rng(5);
  Anisotropy a = Anisotropy::make({1, 2}, {2, 1});
  for (int i = 0; i < 500; ++i) {
    SpaceDescr u = oracle::random_space(rng, a, true), v = oracle::random_space(rng, a, true);
    Rational theta(1 + i % 11, 12);
    SpaceDescr w = interpolate_complex(u, v, theta);
    EXPECT_EQ(w.s.constant, (Rational(1) - theta) * u.s.constant + theta * v.s.constant);
    EXPECT_EQ(w.x.constant, (Rational(1) - theta) * u.x.constant + theta * v.x.constant);
  }
}

TEST(EmbedProperties, TransitivityAndMonotonicity) {
  std::mt19937_64 rng(17);
  Anisotropy aniso = Anisotropy::make({1, 2}, {2, 1});
  std::bernoulli_distribution coin;
  int chains = 0;
  for (int i = 0; i < 3000; ++i) {
    SpaceDescr a = oracle::random_space(rng, aniso, coin(rng));
    SpaceDescr b = oracle::random_space(rng, aniso, coin(rng));
    SpaceDescr c = oracle::random_space(rng, aniso, coin(rng));
    bool ab = embeds(a, b).covered(), bc = embeds(b, c).covered();
    if (ab && bc) {
      ++chains;
      EXPECT_TRUE(embeds(a, c).covered()) << to_string(a) << " " << to_string(b) << " " << to_string(c);
    }
    if (ab) {
      SpaceDescr up = a, down = b;
      up.s = a.s + AffineExpr(Rational(1, 4));
      EXPECT_TRUE(embeds(up, b).covered()) << to_string(up) << " -> " << to_string(b);
      if (b.s.constant >= Rational(1, 4)) {
        down.s = b.s - AffineExpr(Rational(1, 4));
        EXPECT_TRUE(embeds(a, down).covered()) << to_string(a) << " -> " << to_string(down);
      }
    }
  }
  EXPECT_GT(chains, 20);
}
