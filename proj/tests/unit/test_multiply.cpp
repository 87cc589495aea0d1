#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "anisocalc/dsl.hpp"
#include "anisocalc/errors.hpp"
#include "anisocalc/multiply.hpp"
#include "oracles.hpp"

using namespace anisocalc;

namespace {

const Prelude kPre = Prelude::for_dimension(3);
SpaceDescr sp(const std::string& text) { return parse_space(text, kPre); }
SpaceDescr at_p(const std::string& text, long p) { return sp(text).at(Rational(1, p)); }

MultInstance inst(std::vector<SpaceDescr> f, SpaceDescr t) { return {std::move(f), std::move(t)}; }

const TraceEntry* entry(const Decision& d, const std::string& label_prefix) {
  for (const auto& e : d.trace)
    if (e.label.rfind(label_prefix, 0) == 0) return &e;
  return nullptr;
}

Rational index_of(const SpaceDescr& s) {
  // (s - (omega . n) x) / omega_dot, written out independently of the engine.
  long wn = 0, wd = 1;
  for (std::size_t k = 0; k < s.aniso.dims.size(); ++k) {
    wn += static_cast<long>(s.aniso.dims[k]) * s.aniso.weights[k];
    wd = std::lcm(wd, static_cast<long>(s.aniso.weights[k]));
  }
  return (s.s.constant - Rational(wn) * s.x.constant) / Rational(wd);
}

}  // namespace

TEST(Multiplication, ParabolicInstance) {
  auto make = [](long p) {
    return inst({at_p("W^{1-1/p,(2,1)}_p(JxSigma)", p), at_p("H^{1,(2,1)}_p(JxSigma;Lp)", p)},
                at_p("H^{0,(2,1)}_p(JxSigma;Lp)", p));
  };
  EXPECT_TRUE(decide_multiplication(make(3)).covered());
  Decision at2 = decide_multiplication(make(2));
  EXPECT_FALSE(at2.covered());
  ASSERT_NE(at2.first_failure(), nullptr);
  EXPECT_EQ(at2.first_failure()->anchor, "Thm Multiplication-Anisotropic (iii)");
}

TEST(Multiplication, HoelderCase) {
  Decision ok = decide_multiplication(inst({sp("L_4(R)"), sp("L_4(R)")}, sp("L_2(R)")));
  EXPECT_TRUE(ok.covered());
  const TraceEntry* e = entry(ok, "Hoelder");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->anchor, "Remark Multiplication-Anisotropic (e)");
  EXPECT_FALSE(decide_multiplication(inst({sp("L_4(R)"), sp("L_4(R)")}, sp("L_3(R)"))).covered());
}

TEST(Multiplication, UnregisteredSignature) {
  try {
    decide_multiplication(inst({sp("H^{1}_2(R;Lp)"), sp("H^{1}_2(R;Lp)")}, sp("H^{1}_2(R;Lp)")));
    FAIL();
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolation);
  }
}

TEST(Multiplication, SubsetFormMatchesTwoBranchForm) {
  std::mt19937_64 rng(23);
  Anisotropy aniso = Anisotropy::make({1, 2}, {2, 1});
  std::uniform_int_distribution<int> m_dist(1, 4);
  std::bernoulli_distribution coin;
  for (int i = 0; i < 4000; ++i) {
    int m = m_dist(rng);
    std::vector<SpaceDescr> f;
    for (int j = 0; j < m; ++j) f.push_back(oracle::random_space(rng, aniso, false));
    SpaceDescr t = oracle::random_space(rng, aniso, coin(rng));
    Decision d = decide_multiplication(inst(f, t));
    const TraceEntry* iii = entry(d, "(iii)");
    if (!iii) continue;  // stopped at the hypotheses
    std::vector<Rational> ind_j;
    for (const auto& q : f) ind_j.push_back(index_of(q));
    EXPECT_EQ(iii->status == Status::Pass, oracle::two_branch_iii(ind_j, index_of(t)));
  }
}

TEST(Multiplication, PermutationInvariantAndHiddenConstraint) {
  std::mt19937_64 rng(29);
  Anisotropy aniso = Anisotropy::make({1, 1}, {1, 1});
  std::bernoulli_distribution coin;
  int covered = 0;
  for (int i = 0; i < 3000; ++i) {
    std::vector<SpaceDescr> f;
    for (int j = 0; j < 3; ++j) f.push_back(oracle::random_space(rng, aniso, coin(rng)));
    SpaceDescr t = oracle::random_space(rng, aniso, coin(rng));
    Decision d = decide_multiplication(inst(f, t));
    std::vector<SpaceDescr> g = f;
    std::shuffle(g.begin(), g.end(), rng);
    EXPECT_EQ(d.verdict, decide_multiplication(inst(g, t)).verdict);
    if (!d.covered()) continue;
    ++covered;
    for (unsigned mask = 1; mask < 8; ++mask) {
      Rational ind_m(0), x_m(0);
      for (int j = 0; j < 3; ++j)
        if (mask & (1u << j)) ind_m += index_of(f[j]), x_m += f[j].x.constant;
      if (ind_m == index_of(t)) EXPECT_LE(t.x.constant, x_m);
    }
  }
  EXPECT_GT(covered, 20);
}

TEST(Multiplier, ParabolicInstances) {
  MultInstance fu2 = inst({at_p("W^{2-1/p,(2,1)}_p(JxSigma)", 3), at_p("W^{2-1/p,(2,1)}_p(JxSigma)", 3),
                           at_p("H^{0,(2,1)}_p(JxSigma;Lp)", 3)},
                          at_p("H^{0,(2,1)}_p(JxSigma;Lp)", 3));
  EXPECT_TRUE(decide_multiplier(fu2, 2).covered());
  auto fh = [](long p) {
    return inst({at_p("W^{2-1/p,(2,1)}_p(JxSigma)", p), at_p("W^{1-1/p,(2,1)}_p(JxSigma)", p)},
                at_p("W^{1-1/p,(2,1)}_p(JxSigma)", p));
  };
  EXPECT_TRUE(decide_multiplier(fh(3), 1).covered());
  Decision at2 = decide_multiplier(fh(2), 1);
  EXPECT_FALSE(at2.covered());
  EXPECT_EQ(at2.first_failure()->anchor, "Thm Multiplier-Anisotropic");
  EXPECT_THROW(decide_multiplier(fh(3), 5), EngineError);
}

TEST(Algebra, Threshold) {
  EXPECT_TRUE(decide_algebra(at_p("W^{1-1/p,(2,1)}_p(JxSigma)", 6)).covered());
  EXPECT_FALSE(decide_algebra(at_p("W^{1-1/p,(2,1)}_p(JxSigma)", 4)).covered());
  EXPECT_TRUE(decide_algebra(at_p("H^{2,(2,1)}_p(JxSigma)", 7)).covered());
  try {
    decide_algebra(at_p("H^{2,(2,1)}_p(JxSigma;Lp)", 7));
    FAIL();
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolation);
  }
}

TEST(Algebra, ImpliesSquareMultiplication) {
  std::mt19937_64 rng(31);
  Anisotropy aniso = Anisotropy::make({1, 2}, {2, 1});
  std::bernoulli_distribution coin;
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    SpaceDescr u = oracle::random_space(rng, aniso, coin(rng));
    if (decide_algebra(u).covered()) {
      ++hits;
      EXPECT_TRUE(decide_multiplication(inst({u, u}, u)).covered()) << to_string(u);
    }
  }
  EXPECT_GT(hits, 20);
}

TEST(Reduced, UnitalOmission) {
  SpaceDescr h = sp("H^{2}_4(R)");
  MultInstance three = inst({h, h, h}, h);
  ASSERT_TRUE(decide_multiplication(three).covered());
  EXPECT_TRUE(reduced_multiplication(three, {1}).covered());
  EXPECT_THROW(reduced_multiplication(three, {0, 1, 2}), EngineError);
  Prelude pre = kPre;
  pre.load("target A umd alpha algebra\nsignature A * R * R -> R\n");
  MultInstance with_a = inst({parse_space("H^{2}_4(R;A)", pre), h, h}, h);
  try {
    reduced_multiplication(with_a, {0}, pre.registry);
    FAIL();
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolation);
  }
}

TEST(Closure, ComplexInterpolationOfProducts) {
  MultInstance a = inst({sp("H^{5/2}_2(R)"), sp("H^{3/2}_2(R)")}, sp("H^{3/2}_2(R)"));
  MultInstance b = inst({sp("H^{3/2}_2(R)"), sp("H^{1/2}_2(R)")}, sp("H^{1/2}_2(R)"));
  Decision da = decide_multiplication(a);
  EXPECT_FALSE(da.covered());
  EXPECT_NE(da.first_failure()->detail.find("(d)-only failure"), std::string::npos);
  try {
    interpolation_closure(a, b, Rational(1, 2));
    FAIL();
  } catch (const EngineError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ClosureFromUncovered);
  }
  auto [mid, d] = interpolation_closure(a, b, Rational(1, 2), true, true);
  EXPECT_TRUE(d.covered());
  EXPECT_EQ(mid, inst({sp("H^{2}_2(R)"), sp("H^{1}_2(R)")}, sp("H^{1}_2(R)")));
  EXPECT_EQ(interpolation_closure(a, b, Rational(0), true, true).first, a);
}
