// Random symbolic decision queries for the parameter-solver property tests.
#pragma once

#include <random>

#include "anisocalc/errors.hpp"
#include "anisocalc/psolver.hpp"

namespace oracle {

inline anisocalc::SpaceDescr random_symbolic_space(std::mt19937_64& rng, const anisocalc::Anisotropy& aniso) {
  using namespace anisocalc;
  std::uniform_int_distribution<int> scale(0, 2), c(0, 8), k(0, 2), px(1, 2);
  SpaceDescr sp;
  sp.scale = scale(rng) == 0 ? Scale::H : (scale(rng) == 1 ? Scale::B : Scale::W);
  sp.aniso = aniso;
  int kk = k(rng);
  sp.s = AffineExpr{Rational(c(rng), 2) + Rational(kk), Rational(-kk)};
  sp.x = AffineExpr{Rational(0), Rational(1, px(rng))};
  if (sp.scale == Scale::H && !sp.s.is_constant()) sp.s = AffineExpr(sp.s.constant);
  return sp;
}

/// Embedding, product, multiplier or algebra query over one shared p.
inline anisocalc::DecisionQuery random_symbolic_query(std::mt19937_64& rng) {
  using namespace anisocalc;
  Anisotropy aniso = Anisotropy::make({1, 2}, {2, 1});
  std::uniform_int_distribution<int> kind(0, 3), m(2, 3);
  auto space = [&] { return random_symbolic_space(rng, aniso); };
  switch (kind(rng)) {
    case 0:
      return EmbedQuery{space(), space()};
    case 1: {
      std::vector<SpaceDescr> f;
      for (int j = m(rng); j > 0; --j) f.push_back(space());
      return MultQuery{{f, space()}};
    }
    case 2: {
      std::vector<SpaceDescr> f;
      for (int j = m(rng); j > 0; --j) f.push_back(space());
      SpaceDescr t = f.back();
      return MultiplierQuery{{f, t}, f.size() - 1};
    }
    default:
      return AlgebraQuery{space()};
  }
}

/// Concrete verdict; rule errors count as not covered.
inline bool covered_at(const anisocalc::DecisionQuery& q, const anisocalc::Rational& x) {
  try {
    return anisocalc::decide(anisocalc::substitute(q, x)).covered();
  } catch (const anisocalc::EngineError&) {
    return false;
  }
}

}  // namespace oracle
