#include "anisocalc/appsuite.hpp"

#include <algorithm>
#include <future>

#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

const AffineExpr kX = AffineExpr::variable();

// Slice of an intersection over J (k = 1) or Sigma (k = 2).
SliceSpace slice(int k, int dim, const std::string& domain, Scale scale, AffineExpr s) {
  SpaceDescr sp;
  sp.scale = scale;
  sp.s = std::move(s);
  sp.x = kX;
  sp.aniso = Anisotropy::isotropic(dim);
  sp.domain = domain;
  return {k, sp};
}

// W^{s_1}_p(J; L_p(Sigma)) cap L_p(J; W^{s_2}_p(Sigma)).
SpaceDescr interface_space(int n, AffineExpr s_time, AffineExpr s_space) {
  return recognize_intersection(
      {slice(1, 1, "J", Scale::W, std::move(s_time)), slice(2, n - 1, "Sigma", Scale::W, std::move(s_space))},
      std::nullopt, "JxSigma");
}

SpaceDescr parabolic(int n, Scale scale, AffineExpr s, const std::string& domain, int sigma_dims,
                     TargetSpace target = TargetSpace::scalar()) {
  SpaceDescr sp;
  sp.scale = scale;
  sp.s = std::move(s);
  sp.x = kX;
  sp.aniso = Anisotropy::make({1, sigma_dims}, {2, 1});
  sp.target = std::move(target);
  sp.domain = domain;
  (void)n;
  return sp;
}

AffineExpr affine(long c_num, long c_den, long m_num, long m_den) {
  return {Rational(c_num, c_den), Rational(m_num, m_den)};
}

const RegularityFact& fact(const std::vector<RegularityFact>& facts, const std::string& anchor) {
  for (const auto& f : facts)
    if (f.anchor == anchor) return f;
  throw EngineError(ErrorKind::InvalidArgument, "unknown fact " + anchor);
}

ParamSet at_least(const Rational& p) { return ParamSet::from_p_interval(p, true); }
ParamSet above(const Rational& p) { return ParamSet::from_p_interval(p, false); }

MultInstance product(std::vector<SpaceDescr> factors, SpaceDescr target) {
  return {std::move(factors), std::move(target)};
}

std::vector<SpaceDescr> repeat(const SpaceDescr& sp, int m) { return std::vector<SpaceDescr>(m, sp); }

void evaluate(AppReport& r) {
  std::vector<std::future<void>> jobs;
  for (auto& t : r.terms)
    jobs.push_back(std::async(std::launch::async, [&t, &r] {
      if (r.p) t.decision = decide(substitute(t.query, Rational(1) / *r.p));
      else t.computed = solve_param(t.query);
    }));
  for (auto& j : jobs) j.get();

  if (r.p) {
    r.all_covered = true;
    for (const auto& t : r.terms) r.all_covered = r.all_covered && t.decision->covered();
    return;
  }
  ParamSet all = ParamSet::from_p_interval(Rational(1), false);
  for (const auto& t : r.terms) all = all.intersect(t.computed);
  r.intersection = all;
  r.with_exclusions = all;
  for (const Rational& p : {Rational(3, 2), Rational(3)}) {
    Rational x = Rational(1) / p;
    if (all.contains(x)) r.with_exclusions.excluded.push_back({x, r.exclusion_notes.front()});
  }
  std::sort(r.with_exclusions.excluded.begin(), r.with_exclusions.excluded.end(),
            [](const auto& a, const auto& b) { return a.x < b.x; });
}

void check_args(int n, const std::optional<Rational>& p) {
  if (n < 2) throw EngineError(ErrorKind::InvalidArgument, "the applications need n >= 2");
  if (p && !(Rational(1) < *p)) throw EngineError(ErrorKind::InvalidArgument, "need 1 < p < inf");
}

}  // namespace

AppReport run_stefan(int n, std::optional<Rational> p) {
  check_args(n, p);
  AppReport r;
  r.problem = "stefan";
  r.n = n;
  r.p = p;
  const TargetSpace lp = TargetSpace::lebesgue("Lp");
  const Rational np2(n + 2);

  SpaceDescr tderh = interface_space(n, affine(1, 2, -1, 2), affine(2, 1, -2, 1));
  SpaceDescr w1 = interface_space(n, affine(1, 2, -1, 2), affine(1, 1, -1, 1));
  SpaceDescr w52 = interface_space(n, affine(5, 4, -1, 2), affine(5, 2, -1, 1));
  SpaceDescr w2 = interface_space(n, affine(1, 1, -1, 2), affine(2, 1, -1, 1));
  SpaceDescr h1v = parabolic(n, Scale::H, AffineExpr(1), "JxSigma", n - 1, lp);
  SpaceDescr h0v = parabolic(n, Scale::H, AffineExpr(0), "JxSigma", n - 1, lp);

  r.facts = {
      {"d_t h", w1, "(tderh)",
       "d_t h in W^{1/2-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{2-2/p}_p(Sigma)) = " + to_string(tderh) +
           " -> " + to_string(w1)},
      {"d_j h", w52, "(derh)",
       "d_j h in W^{5/4-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{5/2-1/p}_p(Sigma)) = " + to_string(w52)},
      {"d_j d_k h", w2, "(2derh)",
       "d_j d_k h in W^{1-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{2-1/p}_p(Sigma)) = " + to_string(w2)},
      {"d_j u", h1v, "(deru)", "d_j u in H^{1,(2,1)}_p(J x Rdot^n) -> " + to_string(h1v)},
      {"d_j d_k u", h0v, "(2deru)", "d_j d_k u in L_p(J x Rdot^n) = " + to_string(h0v)},
      {"[d_j u]_Sigma", w1, "(tracederu)",
       "[d_j u] in W^{1/2-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{1-1/p}_p(Sigma)) = " + to_string(w1)},
  };
  const auto& f_tderh = fact(r.facts, "(tderh)").space;
  const auto& f_derh = fact(r.facts, "(derh)").space;
  const auto& f_2derh = fact(r.facts, "(2derh)").space;
  const auto& f_deru = fact(r.facts, "(deru)").space;
  const auto& f_2deru = fact(r.facts, "(2deru)").space;
  const auto& f_trace = fact(r.facts, "(tracederu)").space;

  const ParamSet cond1p = at_least(np2 / Rational(2));
  const ParamSet cond2p = above(Rational(2) * np2 / Rational(5));
  const std::string c1 = "(cond1p) p >= (n+2)/2", c2 = "(cond2p) p > 2(n+2)/5";

  auto term = [&](std::string text, DecisionQuery q, const ParamSet& expected, const std::string& anchor) {
    r.terms.push_back({std::move(text), std::move(q), expected, anchor, {}, std::nullopt});
  };
  term("(kappa d_t h - mu Delta_Sigma h) d_n u", MultQuery{product({f_tderh, f_deru}, h0v)}, cond1p, c1);
  term("2 mu (grad_Sigma h . grad_Sigma) d_n u", MultiplierQuery{product({f_derh, f_2deru}, h0v), 1}, cond2p, c2);
  term("mu |grad_Sigma h|^2 d_n^2 u", MultiplierQuery{product({f_derh, f_derh, f_2deru}, h0v), 2}, cond2p, c2);
  term("phi(grad_Sigma h), psi_jk(grad_Sigma h)", NemytskijQuery{repeat(f_derh, n - 1), w52, Rational(1), true},
       cond2p, c2);
  term("phi(grad_Sigma h) Delta_Sigma h, psi_jk(grad_Sigma h) d_j d_k h",
       MultiplierQuery{product({f_derh, f_2derh}, w2), 1}, cond2p, c2);
  term("grad_Sigma h . [[mu grad_Sigma u]]", MultiplierQuery{product({f_derh, f_trace}, w1), 1}, cond2p, c2);
  term("|grad_Sigma h|^2 [[mu d_nu u]]", MultiplierQuery{product({f_derh, f_derh, f_trace}, w1), 2}, cond2p, c2);

  r.exclusion_notes = {"Prop Stefan-Linear: p != 3/2, 3"};
  r.footer = {"Eq. Stefan-Compatibility: [u_0]_Sigma - sigma Delta_Sigma h_0 = g_u(0) if p > 3/2; "
              "[[mu d_nu u_0]]_Sigma + g_h(0) in W^{2-6/p}_p(Sigma) if p > 3"};
  evaluate(r);
  return r;
}

AppReport run_nvs(int n, std::optional<Rational> p) {
  check_args(n, p);
  AppReport r;
  r.problem = "nvs";
  r.n = n;
  r.p = p;
  const TargetSpace lp = TargetSpace::lebesgue("Lp");
  const Rational np2(n + 2);

  SpaceDescr w1 = interface_space(n, affine(1, 2, -1, 2), affine(1, 1, -1, 1));
  SpaceDescr w2 = interface_space(n, affine(1, 1, -1, 2), affine(2, 1, -1, 1));
  SpaceDescr h1v = parabolic(n, Scale::H, AffineExpr(1), "JxSigma", n - 1, lp);
  SpaceDescr h2v = parabolic(n, Scale::H, AffineExpr(2), "JxSigma", n - 1, lp);
  SpaceDescr h0v = parabolic(n, Scale::H, AffineExpr(0), "JxSigma", n - 1, lp);
  SpaceDescr h2 = parabolic(n, Scale::H, AffineExpr(2), "JxRdot", n);
  SpaceDescr h1 = parabolic(n, Scale::H, AffineExpr(1), "JxRdot", n);
  SpaceDescr h0 = parabolic(n, Scale::H, AffineExpr(0), "JxRdot", n);

  r.facts = {
      {"d_t h", w2, "(est-ht)",
       "d_t h in W^{1-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{2-1/p}_p(Sigma)) = " + to_string(w2)},
      {"d_j h", w2, "(est-hx)",
       "d_j h in W^{1-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{2-1/p}_p(Sigma)) = " + to_string(w2)},
      {"d_j d_k h", w1, "(est-hxy)",
       "d_j d_k h in W^{1/2-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{1-1/p}_p(Sigma)) = " + to_string(w1)},
      {"d_j u", h1v, "(est-ux)", "d_j u in " + to_string(h1) + " -> " + to_string(h1v)},
      {"d_j d_k u", h0v, "(est-uxy)", "d_j d_k u in " + to_string(h0) + " = " + to_string(h0v)},
      {"[d_j u]_Sigma", w1, "(est-ux-tr)",
       "[d_j u] in W^{1/2-1/2p}_p(J, L_p(Sigma)) cap L_p(J, W^{1-1/p}_p(Sigma)) = " + to_string(w1)},
  };
  const auto& f_ht = fact(r.facts, "(est-ht)").space;
  const auto& f_hx = fact(r.facts, "(est-hx)").space;
  const auto& f_hxy = fact(r.facts, "(est-hxy)").space;
  const auto& f_ux = fact(r.facts, "(est-ux)").space;
  const auto& f_uxy = fact(r.facts, "(est-uxy)").space;
  const auto& f_tr = fact(r.facts, "(est-ux-tr)").space;
  (void)f_ht;

  const ParamSet weak = at_least(np2 / Rational(2));
  const ParamSet reqp1 = above(np2 / Rational(2));
  const ParamSet reqp2 = at_least(np2 / Rational(3));
  const std::string a1w = "(reqp1weak) p >= (n+2)/2", a1 = "(reqp1) p > (n+2)/2", a2 = "(reqp2) p >= (n+2)/3";

  auto term = [&](std::string text, DecisionQuery q, const ParamSet& expected, const std::string& anchor) {
    r.terms.push_back({std::move(text), std::move(q), expected, anchor, {}, std::nullopt});
  };
  // d_t grad_Sigma h and Delta_Sigma h both lie in the space of (est-hxy).
  MultQuery emb_fu1{product({f_hxy, f_ux}, h0v)};
  MultiplierQuery emb_fu2_1{product({f_hx, f_uxy}, h0v), 1};
  MultiplierQuery emb_fu2_2{product({f_hx, f_hx, f_uxy}, h0v), 2};
  MultiplierQuery embfh{product({f_hx, f_tr}, w1), 1};

  term("F_u: (rho d_t h - mu Delta_Sigma h) d_n {v, w}", emb_fu1, weak, a1w);
  term("F_u: 2 mu (grad_Sigma h . grad_Sigma) d_n {v, w}, grad_Sigma h d_n q", emb_fu2_1, reqp1, a1);
  term("F_u: mu |grad_Sigma h|^2 d_n^2 {v, w}", emb_fu2_2, reqp1, a1);
  term("F_u: rho (v . grad') {v, w}, rho w d_n {v, w}", MultQuery{product({h2, h1}, h0)}, reqp2, a2);
  term("F_u: rho (v . grad_Sigma h) d_n {v, w}, first factor pair", MultQuery{product({f_hx, f_ux}, h0v)}, reqp2,
       a2);
  term("F_u: rho (v . grad_Sigma h) d_n {v, w}, second factor pair", MultiplierQuery{product({h2, h0}, h0), 1},
       reqp1, a1);
  term("G_q: d_t grad_Sigma h . v", MultQuery{product({f_hxy, h2v}, h0v)}, reqp2, a2);
  term("G_q: grad_Sigma h . d_t v", emb_fu2_1, reqp1, a1);
  term("G_q: d_j grad_Sigma h . d_n v", emb_fu1, weak, a1w);
  term("G_q: grad_Sigma h . d_j d_n v, grad_Sigma h . d_n^2 v", emb_fu2_1, reqp1, a1);
  term("F_h", embfh, reqp1, a1);
  term("G_sigma: phi(grad_Sigma h), psi_jk(grad_Sigma h)", NemytskijQuery{repeat(f_hx, n - 1), w2, Rational(1), true},
       reqp1, a1);
  term("G_sigma: phi(grad_Sigma h) Delta_Sigma h, psi_jk(grad_Sigma h) d_j d_k h", embfh, reqp1, a1);
  term("G_u: sigma Delta_Sigma h grad_Sigma h, G_sigma(h) grad_Sigma h", embfh, reqp1, a1);
  term("G_u: remaining terms, m = 2", MultiplierQuery{product({f_hx, f_hx, f_tr}, w1), 2}, reqp1, a1);

  r.exclusion_notes = {"Prop two-phase-nvs-lin: p != 3/2, 3"};
  r.footer = {"Eq. two-phase-nvs-compat: div u_0 = g_q(0), [[u_0]]_Sigma = 0 if p > 3/2; "
              "-[[mu d_n v_0]]_Sigma - [[mu grad' w_0]]_Sigma = g_v(0) if p > 3"};
  evaluate(r);
  return r;
}

}  // namespace anisocalc
