#include <cmath>

#include <gtest/gtest.h>

#include "anisocalc/dsl.hpp"
#include "anisocalc/normlab.hpp"

using namespace anisocalc;

namespace {

SpaceDescr sp(const std::string& text) { return parse_space(text); }

GridFunction sampled(const TestFunction& f, const SpaceDescr& space, double spacing = 1.0 / 20, double decay = 4) {
  return GridFunction::sample(GridSpec::around(space.aniso, spacing, decay), f.eval);
}

double slobodeckij(const TestFunction& f, const SpaceDescr& space, double spacing = 1.0 / 20) {
  return seminorm_slobodeckij(sampled(f, space, spacing), space).value;
}

}  // namespace

TEST(Normlab, ZeroFunctionHasZeroSeminorm) {
  SpaceDescr w = sp("W^{1/2}_2(R)");
  TestFunction zero{"zero", [](const std::vector<double>&) { return 0.0; }};
  EXPECT_EQ(slobodeckij(zero, w), 0.0);
  EXPECT_EQ(seminorm_besov(sampled(zero, sp("B^{1/2}_2(R)")), sp("B^{1/2}_2(R)")).value, 0.0);
}

TEST(Normlab, AbsoluteHomogeneity) {
  SpaceDescr w = sp("W^{3/4}_3(R)");
  TestFunction g = gaussian(1);
  TestFunction scaled{"3g", [g](const std::vector<double>& x) { return -3.0 * g.eval(x); }};
  double a = slobodeckij(g, w), b = slobodeckij(scaled, w);
  EXPECT_GT(a, 0);
  EXPECT_NEAR(b / a, 3.0, 3e-9);
}

TEST(Normlab, TranslationInvariance) {
  SpaceDescr w = sp("W^{1/2}_2(R)");
  double centered = slobodeckij(gaussian(1), w);
  double shifted = slobodeckij(gaussian(1, 1.0, {0.5}), w);
  EXPECT_NEAR(shifted / centered, 1.0, 1e-3);
}

TEST(Normlab, DilationFollowsTheIndex) {
  // |u(lambda^omega .)| scales like lambda^{omega_dot ind}.
  for (const char* text : {"W^{1/2}_2(R)", "W^{3/4}_2(R)", "W^{1/3}_3(R)"}) {
    SpaceDescr w = sp(text);
    double expected = sobolev_index(w).constant.to_double() * w.aniso.omega_dot();
    double one = slobodeckij(gaussian(1), w);
    double two = slobodeckij(dilate(gaussian(1), w.aniso, 2.0), w);
    EXPECT_NEAR(std::log2(two / one), expected, 0.05) << text;
  }
}

TEST(Normlab, AnisotropicDilation) {
  SpaceDescr w = sp("W^{1/2,(2,1)}_2(R^{1x1})");
  GridSpec grid = GridSpec::around(w.aniso, 1.0 / 10, 3);
  auto semi = [&](double lambda) {
    TestFunction f = dilate(gaussian(2), w.aniso, lambda);
    return seminorm_slobodeckij(GridFunction::sample(grid, f.eval), w).value;
  };
  double expected = sobolev_index(w).constant.to_double() * w.aniso.omega_dot();
  EXPECT_NEAR(std::log2(semi(2.0) / semi(1.0)), expected, 0.1);
}

TEST(Normlab, BesovAndSlobodeckijAreComparable) {
  TestFunction g = gaussian(1);
  double w = slobodeckij(g, sp("W^{1/2}_2(R)"));
  double b = seminorm_besov(sampled(g, sp("B^{1/2}_2(R)")), sp("B^{1/2}_2(R)")).value;
  EXPECT_GT(b / w, 0.1);
  EXPECT_LT(b / w, 10.0);
}

TEST(Normlab, StableUnderRefinement) {
  SpaceDescr w = sp("W^{1/2}_2(R)");
  double coarse = slobodeckij(gaussian(1), w, 1.0 / 20);
  double fine = slobodeckij(gaussian(1), w, 1.0 / 40);
  EXPECT_LT(std::abs(fine - coarse) / fine, 0.02);
}

TEST(Normlab, HoelderRatioStaysBelowOne) {
  MultInstance inst{{sp("L_4(R)"), sp("L_4(R)")}, sp("L_2(R)")};
  GridSpec grid = GridSpec::around(inst.target.aniso, 1.0 / 20, 4);
  std::vector<std::vector<GridFunction>> family;
  for (int k = 0; k < 5; ++k)
    family.push_back({GridFunction::sample(grid, gaussian(1, 1.0 + k / 4.0).eval),
                      GridFunction::sample(grid, gaussian(1, 0.5, {k / 2.0}).eval)});
  ProductEstimate est = check_product_estimate(inst, family);
  ASSERT_EQ(est.ratios.size(), 5u);
  EXPECT_LE(est.max_ratio, 1.0 + 1e-6);
  EXPECT_GT(est.min_ratio, 0.0);
}

TEST(Normlab, ProductEstimateRefusesUncoveredInstances) {
  MultInstance inst{{sp("L_4(R)"), sp("L_4(R)")}, sp("L_3(R)")};
  try {
    check_product_estimate(inst, {});
    FAIL() << "expected a NotCovered error";
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCovered);
    EXPECT_FALSE(e.anchor().empty());
  }
}

TEST(Normlab, TooShortScaleRangeIsAResolutionError) {
  SpaceDescr w = sp("W^{1/2}_2(R)");
  GridFunction u = GridFunction::sample(GridSpec::around(w.aniso, 1.0, 1.0), gaussian(1).eval);
  try {
    seminorm_slobodeckij(u, w);
    FAIL() << "expected a ResolutionError";
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResolutionError);
  }
}

TEST(Normlab, WrongScaleAndIntegerOrderAreRefused) {
  GridFunction u = sampled(gaussian(1), sp("H^{1}_2(R)"));
  EXPECT_THROW(seminorm_slobodeckij(u, sp("H^{1}_2(R)")), EngineError);
  EXPECT_THROW(seminorm_slobodeckij(u, sp("W^{1}_2(R)")), EngineError);
}

TEST(Normlab, FittedExponent) {
  std::vector<double> lambdas{0.5, 1, 2, 4};
  std::vector<double> values;
  for (double l : lambdas) values.push_back(3 * std::pow(l, 0.25));
  EXPECT_NEAR(fit_scaling_exponent(lambdas, values), 0.25, 1e-12);
}
