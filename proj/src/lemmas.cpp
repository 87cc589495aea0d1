#include "anisocalc/lemmas.hpp"

#include <numeric>

#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

constexpr const char* kRealization = "Lemma Realization";
constexpr const char* kMinimization = "Lemma Minimization";

Rational positive_part(const Rational& v) { return v.sign() > 0 ? v : Rational(0); }
Rational negative_part(const Rational& v) { return v.sign() < 0 ? v : Rational(0); }

}  // namespace

Realization realize_exponents(const std::vector<Rational>& sigma, const std::vector<Rational>& pi,
                              const Rational& rho) {
  const std::size_t m = sigma.size();
  if (m < 2 || pi.size() != m)
    throw EngineError(ErrorKind::InvalidArgument, "need m >= 2 and matching sigma, pi", kRealization);
  for (std::size_t j = 0; j < m; ++j) {
    if (sigma[j].sign() < 0) throw EngineError(ErrorKind::InvalidArgument, "sigma_j must be >= 0", kRealization);
    if (!(Rational(0) < pi[j] && pi[j] < Rational(1)))
      throw EngineError(ErrorKind::InvalidArgument, "pi_j must lie in (0,1)", kRealization);
  }
  if (!(Rational(0) < rho && rho < Rational(1)))
    throw EngineError(ErrorKind::InvalidArgument, "rho must lie in (0,1)", kRealization);

  Rational lower(0), upper(0);
  std::vector<Rational> base(m);
  for (std::size_t j = 0; j < m; ++j) {
    base[j] = positive_part(pi[j] - sigma[j]);
    lower += base[j];
    upper += pi[j];
  }
  if (rho < lower || upper < rho)
    throw EngineError(ErrorKind::InfeasibleRange,
                      "rho = " + rho.str() + " outside [" + lower.str() + ", " + upper.str() + "]", kRealization);

  Realization out;
  if (upper == lower) {
    // Every sigma_j vanishes, so each rho_j is pinned to pi_j.
    out.rho = pi;
    out.theta0 = Rational(1);
  } else {
    // phi_j(theta) = (1 - theta) base_j + theta pi_j, summed: lower + theta (upper - lower).
    out.theta0 = (rho - lower) / (upper - lower);
    for (std::size_t j = 0; j < m; ++j)
      out.rho.push_back((Rational(1) - out.theta0) * base[j] + out.theta0 * pi[j]);
  }
  out.strict = lower < rho;
  return out;
}

Rational phi_value(const std::vector<Rational>& sigma, const std::vector<Rational>& pi, const std::vector<long>& nu) {
  Rational sum(0);
  for (std::size_t j = 0; j < sigma.size(); ++j) sum += negative_part(sigma[j] - pi[j] - Rational(nu[j]));
  return sum;
}

Minimization minimize_phi(const std::vector<Rational>& sigma, const std::vector<Rational>& pi, long n) {
  const std::size_t m = sigma.size();
  if (m < 2 || pi.size() != m) throw EngineError(ErrorKind::InvalidArgument, "need m >= 2", kMinimization);
  if (n < 1) throw EngineError(ErrorKind::InvalidArgument, "need n >= 1", kMinimization);
  for (std::size_t j = 0; j < m; ++j)
    if (sigma[j].sign() <= 0 || pi[j].sign() <= 0)
      throw EngineError(ErrorKind::InvalidArgument, "sigma_j and pi_j must be positive", kMinimization);

  MinimizerRule rule;
  std::vector<Rational> diff(m);
  for (std::size_t j = 0; j < m; ++j) diff[j] = sigma[j] - pi[j];
  rule.mu = diff.front();
  for (const auto& d : diff) rule.mu = min(rule.mu, d);
  Rational negative_sum(0);
  for (std::size_t j = 0; j < m; ++j) {
    int s = diff[j].sign();
    (s > 0 ? rule.m_plus : (s < 0 ? rule.m_minus : rule.m_zero)).push_back(j);
    if (s < 0) negative_sum += diff[j];
    if (diff[j] == rule.mu) rule.m_bullet.push_back(j);
  }
  Minimization out;
  const Rational nr(n);
  if (rule.mu.sign() >= 0) {
    out.value = negative_part(rule.mu - nr);
    rule.kind = rule.mu >= nr ? MinimizerCase::EveryNu : MinimizerCase::ConcentrateOne;
  } else {
    out.value = negative_sum - nr;
    rule.kind = MinimizerCase::AvoidPositive;
  }
  out.rule = rule;
  return out;
}

bool MinimizerRule::admits(const std::vector<long>& nu, long n) const {
  long total = std::accumulate(nu.begin(), nu.end(), 0L);
  if (total > n) return false;
  if (kind == MinimizerCase::EveryNu) return true;
  if (total != n) return false;
  auto contains = [](const std::vector<std::size_t>& set, std::size_t j) {
    for (auto k : set)
      if (k == j) return true;
    return false;
  };
  int exceptions = 0;
  for (std::size_t j : m_plus) {
    if (nu[j] == 0) continue;
    if (kind == MinimizerCase::AvoidPositive || !contains(m_bullet, j)) return false;
    ++exceptions;
  }
  return exceptions <= 1;
}

}  // namespace anisocalc
