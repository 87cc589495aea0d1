#pragma once

#include <vector>

#include "anisocalc/ratcore.hpp"

namespace anisocalc {

/// Exponents rho_j with sum rho_j = rho and max(0, pi_j - sigma_j) <= rho_j <= pi_j.
struct Realization {
  std::vector<Rational> rho;
  Rational theta0;  // parameter of the affine path at which the sum hits rho
  bool strict = false;  // rho_j > 0 and rho_j > pi_j - sigma_j wherever sigma_j != 0
};

/// Requires m >= 2, sigma_j >= 0, 0 < pi_j < 1, 0 < rho < 1 and
/// sum [pi_j - sigma_j]_+ <= rho <= sum pi_j; throws InfeasibleRange otherwise.
Realization realize_exponents(const std::vector<Rational>& sigma, const std::vector<Rational>& pi,
                              const Rational& rho);

enum class MinimizerCase {
  EveryNu,         // mu >= n
  ConcentrateOne,  // 0 <= mu < n
  AvoidPositive,   // mu < 0
};

struct MinimizerRule {
  MinimizerCase kind;
  Rational mu;
  std::vector<std::size_t> m_plus, m_minus, m_zero, m_bullet;  // 0-based

  /// Whether nu (with |nu| <= n) attains the minimum according to the rule.
  bool admits(const std::vector<long>& nu, long n) const;
};

struct Minimization {
  Rational value;
  MinimizerRule rule;
};

/// Minimum of sum_j [sigma_j - pi_j - nu_j]_- over nu in N_0^m with |nu| <= n.
Minimization minimize_phi(const std::vector<Rational>& sigma, const std::vector<Rational>& pi, long n);

/// The objective itself, for checking minimizers.
Rational phi_value(const std::vector<Rational>& sigma, const std::vector<Rational>& pi, const std::vector<long>& nu);

}  // namespace anisocalc
