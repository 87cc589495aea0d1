#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anisocalc/decision.hpp"
#include "anisocalc/spaces.hpp"

namespace anisocalc {

/// Analytic map on a polydisc of radius r around 0.
struct AnalyticSpec {
  Rational radius = Rational(1);
  bool vanishes_at_zero = true;
  std::string name = "phi";
};

/// Symbolic constants of the Lipschitz estimate.
struct ConstantsLedger {
  std::string rho_rule;
  std::vector<std::string> embedding_constants;  // C_j
  std::vector<std::string> bound_constants;      // M_j
  std::vector<std::string> lipschitz_dependencies;
};

struct NemytskijResult {
  Decision decision;
  std::optional<ConstantsLedger> ledger;  // present iff covered
};

NemytskijResult decide_nemytskij(const std::vector<SpaceDescr>& args, const SpaceDescr& target,
                                 const AnalyticSpec& phi,
                                 const SignatureRegistry& reg = SignatureRegistry::defaults());

}  // namespace anisocalc
