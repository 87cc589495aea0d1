#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "anisocalc/decision.hpp"
#include "anisocalc/spaces.hpp"

namespace anisocalc {

/// Product X_1 * ... * X_m -> X. The signature is read off the value
/// spaces of the factors and of the target.
struct MultInstance {
  std::vector<SpaceDescr> factors;
  SpaceDescr target;

  MultSignature signature() const;
  bool symbolic() const;
  MultInstance at(const Rational& x) const;

  friend bool operator==(const MultInstance&, const MultInstance&) = default;
};

std::string to_string(const MultInstance& inst);

Decision decide_multiplication(const MultInstance& inst,
                               const SignatureRegistry& reg = SignatureRegistry::defaults());

/// `ell` is the 0-based position of the factor that shares the target's
/// scale, smoothness and integrability.
Decision decide_multiplier(const MultInstance& inst, std::size_t ell,
                           const SignatureRegistry& reg = SignatureRegistry::defaults());

/// Whether X is closed under pointwise multiplication (needs a Banach
/// algebra as value space).
Decision decide_algebra(const SpaceDescr& space, const SignatureRegistry& reg = SignatureRegistry::defaults());

/// Drops the factors in `omit` (0-based), whose value spaces must be unital.
Decision reduced_multiplication(const MultInstance& inst, const std::set<std::size_t>& omit,
                                const SignatureRegistry& reg = SignatureRegistry::defaults());

/// Multilinear complex interpolation of two covered (or asserted) products.
std::pair<MultInstance, Decision> interpolation_closure(
    const MultInstance& a, const MultInstance& b, const Rational& theta, bool assert_a = false,
    bool assert_b = false, const SignatureRegistry& reg = SignatureRegistry::defaults());

}  // namespace anisocalc
