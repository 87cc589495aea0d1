#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anisocalc/psolver.hpp"

namespace anisocalc {

/// Mixed-derivative regularity taken as an axiom.
struct RegularityFact {
  std::string quantity;
  SpaceDescr space;
  std::string anchor;
  std::string statement;  // the cited inclusion
};

struct TermCheck {
  std::string term;
  DecisionQuery query;
  ParamSet expected;
  std::string expected_anchor;  // governing condition, e.g. "(cond1p) p >= (n+2)/2"
  ParamSet computed;                // filled for symbolic runs
  std::optional<Decision> decision;  // filled for concrete runs
};

struct AppReport {
  std::string problem;
  int n = 0;
  std::optional<Rational> p;  // empty for a parameter solve
  std::vector<RegularityFact> facts;
  std::vector<TermCheck> terms;
  ParamSet intersection;     // engine result
  ParamSet with_exclusions;  // after the linear-theory exclusions
  std::vector<std::string> exclusion_notes;
  std::vector<std::string> footer;
  bool all_covered = false;  // concrete runs
};

AppReport run_stefan(int n, std::optional<Rational> p = std::nullopt);
AppReport run_nvs(int n, std::optional<Rational> p = std::nullopt);

}  // namespace anisocalc
