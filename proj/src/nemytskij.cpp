#include "anisocalc/nemytskij.hpp"

#include <algorithm>

#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

constexpr const char* kNemytskij = "Thm Nemytskij-Anisotropic";
constexpr const char* kNemytskijA = "Thm Nemytskij-Anisotropic (a)";
constexpr const char* kNemytskijB = "Thm Nemytskij-Anisotropic (b)";

}  // namespace

NemytskijResult decide_nemytskij(const std::vector<SpaceDescr>& args, const SpaceDescr& target,
                                 const AnalyticSpec& phi, const SignatureRegistry& reg) {
  if (args.empty()) throw EngineError(ErrorKind::InvalidArgument, "the map needs at least one argument");
  if (phi.radius.sign() <= 0) throw EngineError(ErrorKind::InvalidArgument, "the radius must be positive");
  std::vector<SpaceDescr> all = args;
  all.push_back(target);
  std::vector<TargetSpace> arg_targets;
  for (const auto& sp : all) {
    if (sp.symbolic()) throw EngineError(ErrorKind::Unsupported, "symbolic parameters; use a parameter solve");
    if (!(sp.aniso == target.aniso) || sp.domain != target.domain)
      throw EngineError(ErrorKind::IncompatibleSpaces, to_string(sp) + " lives on a different domain");
    if (!sp.target.banach_algebra || !sp.target.unital)
      throw EngineError(ErrorKind::HypothesisViolation,
                        "value space '" + sp.target.name + "' is not a unital Banach algebra", kNemytskij);
    if (!sp.target.umd || (!sp.aniso.uniform() && !sp.target.prop_alpha))
      throw EngineError(ErrorKind::HypothesisViolation,
                        "value space '" + sp.target.name + "' lacks UMD or property (alpha)", kNemytskij);
  }
  for (const auto& a : args) arg_targets.push_back(a.target);
  if (!reg.admits(arg_targets, target.target))
    throw EngineError(ErrorKind::HypothesisViolation, "argument value spaces do not map into the target", kNemytskij);

  std::vector<SpaceDescr> n;
  for (const auto& a : args) n.push_back(normalize(a));
  SpaceDescr t = normalize(target);

  Decision d;
  auto is_bh = [](const SpaceDescr& sp) { return sp.scale == Scale::B || sp.scale == Scale::H; };
  bool scales_ok = is_bh(t) && std::all_of(n.begin(), n.end(), is_bh);
  d.add("scales in {B, H}", kNemytskij, scales_ok);
  if (!scales_ok) return {d, std::nullopt};
  bool micro = std::all_of(all.begin(), all.end(), [](const SpaceDescr& sp) {
    SpaceDescr q = normalize(sp);
    return q.scale != Scale::B || !q.y;
  });
  d.add("Besov spaces have q = p", kNemytskij, micro);

  Rational ind = sobolev_index(t).constant, s = t.s_value(), x = t.x_value();
  bool ind_ok = ind.sign() > 0, s_ok = s.sign() > 0, p_ok = x.sign() > 0 && x < Rational(1);
  bool mixed = false, a_ok = true;
  Rational min_s = n.front().s_value();
  std::string inds;
  for (std::size_t j = 0; j < n.size(); ++j) {
    Rational ij = sobolev_index(n[j]).constant, sj = n[j].s_value(), xj = n[j].x_value();
    inds += (j ? ", " : "") + ("ind_" + std::to_string(j + 1) + " = " + ij.str());
    if (ij < ind) ind_ok = false;
    if (sj < s) s_ok = false;
    if (!(x <= xj && xj < Rational(1))) p_ok = false;
    min_s = min(min_s, sj);
    if (n[j].scale != t.scale) {
      mixed = true;
      if (!(s < sj)) a_ok = false;
    }
  }
  d.add("0 < ind <= ind_j", kNemytskij, ind_ok, "ind = " + ind.str() + "; " + inds);
  d.add("0 < s <= s_j", kNemytskij, s_ok);
  d.add("1 < p_j <= p < inf", kNemytskij, p_ok);
  if (mixed) d.add("(a) s_j > s where X_j != X", kNemytskijA, a_ok);
  else d.skip("(a) s_j > s where X_j != X", kNemytskijA, "all arguments share the target scale");
  if (t.scale == Scale::H)
    d.add("(b) s in omega_dot N or s < min s_j", kNemytskijB,
          (in_omega_dot_lattice(s, t.aniso) && s.sign() > 0) || s < min_s,
          "s = " + s.str() + ", min s_j = " + min_s.str());
  else
    d.skip("(b) s in omega_dot N or s < min s_j", kNemytskijB, "X = B");
  d.add(phi.name + "(0) = 0", kNemytskij, phi.vanishes_at_zero);

  if (!d.covered()) return {d, std::nullopt};
  ConstantsLedger ledger;
  ledger.rho_rule = "rho < min{C_j^{-1}, M_j^{-1}} * " + phi.radius.str();
  for (std::size_t j = 0; j < n.size(); ++j) {
    ledger.embedding_constants.push_back("C_" + std::to_string(j + 1));
    ledger.bound_constants.push_back("M_" + std::to_string(j + 1));
  }
  ledger.lipschitz_dependencies = {"M", "a_alpha for |alpha| = 1"};
  return {d, ledger};
}

}  // namespace anisocalc
