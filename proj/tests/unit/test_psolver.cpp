#include <gtest/gtest.h>

#include <random>

#include "anisocalc/dsl.hpp"
#include "anisocalc/psolver.hpp"
#include "oracles.hpp"
#include "random_queries.hpp"

using namespace anisocalc;

namespace {

SpaceDescr sp(const std::string& text, int n = 3) { return parse_space(text, Prelude::for_dimension(n)); }

}  // namespace

TEST(ParamSet, Rendering) {
  ParamSet s = ParamSet::from_p_interval(Rational(5, 2), true);
  EXPECT_EQ(s.p_str(), "p in [5/2, inf)");
  EXPECT_EQ(s.x_str(), "1/p in (0, 2/5]");
  s.excluded.push_back({Rational(1, 3), "linear theory"});
  EXPECT_EQ(s.p_str(), "p in [5/2, inf) \\ {3}");
  ParamSet band = ParamSet::from_p_interval(Rational(2), false, Rational(4), true);
  EXPECT_EQ(band.p_str(), "p in (2, 4]");
  EXPECT_TRUE(band.contains(Rational(1, 4)));
  EXPECT_FALSE(band.contains(Rational(1, 2)));
  EXPECT_EQ(s.intersect(band).p_str(), "p in [5/2, 4] \\ {3}");
}

TEST(SolveParam, AlgebraThreshold) {
  for (int n : {2, 3, 4}) {
    ParamSet got = solve_param(AlgebraQuery{sp("W^{1-1/p,(2,1)}_p(JxSigma)", n)});
    EXPECT_EQ(got, ParamSet::from_p_interval(Rational(n + 2), false)) << n;
  }
}

TEST(SolveParam, StefanConditions) {
  for (int n : {2, 3, 4}) {
    MultQuery f{{{sp("W^{1-1/p,(2,1)}_p(JxSigma)", n), sp("H^{1,(2,1)}_p(JxSigma;Lp)", n)},
                 sp("H^{0,(2,1)}_p(JxSigma;Lp)", n)}};
    EXPECT_EQ(solve_param(f), ParamSet::from_p_interval(Rational(n + 2, 2), true));
    MultiplierQuery g{{{sp("W^{5/2-1/p,(2,1)}_p(JxSigma)", n), sp("H^{0,(2,1)}_p(JxSigma;Lp)", n)},
                       sp("H^{0,(2,1)}_p(JxSigma;Lp)", n)},
                      1};
    EXPECT_EQ(solve_param(g), ParamSet::from_p_interval(Rational(2 * (n + 2), 5), false));
  }
}

TEST(SolveParam, IsolatedIdentificationFailure) {
  EmbedQuery q{sp("W^{2-2/p,(2,1)}_p(R^{1x1})"), sp("L^{(2,1)}_p(R^{1x1})")};
  ParamSet s = solve_param(q);
  ASSERT_EQ(s.excluded.size(), 1u);
  EXPECT_EQ(s.excluded.front().x, Rational(1, 2));
  EXPECT_EQ(s.p_str(), "p in (1, inf) \\ {2}");
}

TEST(SolveParam, SoundnessEndpointsAndWitnesses) {
  std::mt19937_64 rng(53);
  int nontrivial = 0;
  for (int i = 0; i < 300 && nontrivial < 20; ++i) {
    DecisionQuery q = oracle::random_symbolic_query(rng);
    ParamSet s;
    try {
      s = solve_param(q);
    } catch (const EngineError&) {
      continue;
    }
    for (int k = 1; k < 120; ++k) {
      Rational x(k, 120);
      if (s.is_excluded(x)) continue;
      bool undefined = false;
      for (const auto& u : s.undefined) undefined = undefined || u.x == x;
      if (undefined) continue;
      EXPECT_EQ(s.contains(x), oracle::covered_at(q, x)) << x.str();
    }
    // Endpoint exactness at every breakpoint.
    for (const auto& b : breakpoints(q)) {
      if (s.is_excluded(b)) continue;
      bool undefined = false;
      for (const auto& u : s.undefined) undefined = undefined || u.x == b;
      if (!undefined) EXPECT_EQ(s.contains(b), oracle::covered_at(q, b)) << b.str();
    }
    // Two witnesses per cell agree.
    std::vector<Rational> edges{Rational(0)};
    for (const auto& b : breakpoints(q)) edges.push_back(b);
    edges.push_back(Rational(1));
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
      Rational w1 = edges[c] + (edges[c + 1] - edges[c]) / Rational(3);
      Rational w2 = edges[c] + (edges[c + 1] - edges[c]) * Rational(2, 3);
      if (s.is_excluded(w1) || s.is_excluded(w2)) continue;
      EXPECT_EQ(oracle::covered_at(q, w1), oracle::covered_at(q, w2));
    }
    if (!s.empty() && !(s == ParamSet::from_p_interval(Rational(1), false))) ++nontrivial;
  }
  EXPECT_GE(nontrivial, 20);
}
