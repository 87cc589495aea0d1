#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "anisocalc/decision.hpp"
#include "anisocalc/multiply.hpp"
#include "anisocalc/nemytskij.hpp"

namespace anisocalc {

struct EmbedQuery {
  SpaceDescr src, dst;
  friend bool operator==(const EmbedQuery&, const EmbedQuery&) = default;
};
struct MultQuery {
  MultInstance inst;
  friend bool operator==(const MultQuery&, const MultQuery&) = default;
};
struct MultiplierQuery {
  MultInstance inst;
  std::size_t ell = 0;
  friend bool operator==(const MultiplierQuery&, const MultiplierQuery&) = default;
};
struct AlgebraQuery {
  SpaceDescr space;
  friend bool operator==(const AlgebraQuery&, const AlgebraQuery&) = default;
};
struct NemytskijQuery {
  std::vector<SpaceDescr> args;
  SpaceDescr target;
  Rational radius = Rational(1);
  bool vanishes_at_zero = true;
  friend bool operator==(const NemytskijQuery&, const NemytskijQuery&) = default;
};

/// Any query with a COVERED / NOT_COVERED answer.
using DecisionQuery = std::variant<EmbedQuery, MultQuery, MultiplierQuery, AlgebraQuery, NemytskijQuery>;

std::vector<SpaceDescr> spaces_of(const DecisionQuery& q);
DecisionQuery substitute(const DecisionQuery& q, const Rational& x);
Decision decide(const DecisionQuery& q, const SignatureRegistry& reg = SignatureRegistry::defaults());

/// Interval of x = 1/p.
struct XInterval {
  Rational lo, hi;
  bool lo_closed = false, hi_closed = false;

  bool contains(const Rational& x) const;
  friend bool operator==(const XInterval&, const XInterval&) = default;
};

struct ExcludedPoint {
  Rational x;
  std::string reason;
  friend bool operator==(const ExcludedPoint&, const ExcludedPoint&) = default;
};

/// Union of intervals in x, minus isolated excluded points.
struct ParamSet {
  std::vector<XInterval> intervals;  // ascending and disjoint
  std::vector<ExcludedPoint> excluded;   // inside some interval
  std::vector<ExcludedPoint> undefined;  // outside every interval, where a decision raised an error

  bool contains(const Rational& x) const;
  bool is_excluded(const Rational& x) const;
  bool empty() const { return intervals.empty(); }
  /// Renders in p, e.g. "p in [5/2, inf)" or "p in (5/2, inf) \ {3}".
  std::string p_str() const;
  /// Renders in x = 1/p.
  std::string x_str() const;

  static ParamSet from_p_interval(const Rational& p_lo, bool lo_closed, std::optional<Rational> p_hi = std::nullopt,
                                  bool hi_closed = false);
  ParamSet intersect(const ParamSet& other) const;

  friend bool operator==(const ParamSet& a, const ParamSet& b) {
    return a.intervals == b.intervals && a.excluded == b.excluded;
  }
};

/// Critical values of x for a symbolic query, in ascending order.
std::vector<Rational> breakpoints(const DecisionQuery& q);

/// Exact set of x in (0,1) for which the query is COVERED.
ParamSet solve_param(const DecisionQuery& q, const SignatureRegistry& reg = SignatureRegistry::defaults());

}  // namespace anisocalc
