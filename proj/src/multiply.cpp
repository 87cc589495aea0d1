#include "anisocalc/multiply.hpp"

#include <algorithm>

#include "anisocalc/embed.hpp"
#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

constexpr const char* kMult = "Thm Multiplication-Anisotropic";
constexpr const char* kMultI = "Thm Multiplication-Anisotropic (i)";
constexpr const char* kMultII = "Thm Multiplication-Anisotropic (ii)";
constexpr const char* kMultIII = "Thm Multiplication-Anisotropic (iii)";
constexpr const char* kMultA = "Thm Multiplication-Anisotropic (a)";
constexpr const char* kMultB = "Thm Multiplication-Anisotropic (b)";
constexpr const char* kMultC = "Thm Multiplication-Anisotropic (c)";
constexpr const char* kMultD = "Thm Multiplication-Anisotropic (d)";
constexpr const char* kMultE = "Thm Multiplication-Anisotropic (e)";
constexpr const char* kMultF = "Thm Multiplication-Anisotropic (f)";
constexpr const char* kHoelder = "Remark Multiplication-Anisotropic (e)";
constexpr const char* kMicro = "Remark Multiplication-Anisotropic (g)";
constexpr const char* kClosure = "Remark Multiplication-Anisotropic (k)";
constexpr const char* kReduced = "Remark Multiplication-Anisotropic (l)";
constexpr const char* kMultiplier = "Thm Multiplier-Anisotropic";
constexpr const char* kMultiplierA = "Thm Multiplier-Anisotropic (a)";
constexpr const char* kMultiplierB = "Thm Multiplier-Anisotropic (b)";
constexpr const char* kMultiplierC = "Thm Multiplier-Anisotropic (c)";
constexpr const char* kAlgebra = "Thm Algebra-Anisotropic";

constexpr std::size_t kMaxFactors = 16;

struct Params {
  Scale scale;
  Rational s, x, y, ind;
};

struct Prepared {
  std::vector<Params> f;
  Params t;
  Anisotropy aniso;
  Decision d;
};

std::string join_indices(unsigned mask, std::size_t m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t j = 0; j < m; ++j)
    if (mask & (1u << j)) {
      out += (first ? "" : ",") + std::to_string(j + 1);
      first = false;
    }
  return out + "}";
}

void check_banach(const std::vector<SpaceDescr>& spaces, const char* anchor) {
  for (const auto& sp : spaces) {
    if (!sp.target.umd)
      throw EngineError(ErrorKind::HypothesisViolation, "value space '" + sp.target.name + "' is not UMD", anchor);
    if (!sp.aniso.uniform() && !sp.target.prop_alpha)
      throw EngineError(ErrorKind::HypothesisViolation,
                        "value space '" + sp.target.name + "' lacks property (alpha)", anchor);
  }
}

Prepared prepare(const MultInstance& inst, const SignatureRegistry& reg, const char* anchor) {
  if (inst.factors.empty()) throw EngineError(ErrorKind::InvalidArgument, "a product needs at least one factor");
  if (inst.factors.size() > kMaxFactors)
    throw EngineError(ErrorKind::Unsupported, "more than 16 factors");
  if (inst.symbolic())
    throw EngineError(ErrorKind::Unsupported, "symbolic parameters; use a parameter solve");
  for (const auto& f : inst.factors)
    if (!(f.aniso == inst.target.aniso) || f.domain != inst.target.domain)
      throw EngineError(ErrorKind::IncompatibleSpaces,
                        to_string(f) + " and " + to_string(inst.target) + " live on different domains");
  std::vector<SpaceDescr> all = inst.factors;
  all.push_back(inst.target);
  check_banach(all, anchor);
  std::vector<TargetSpace> ft;
  for (const auto& f : inst.factors) ft.push_back(f.target);
  if (!reg.admits(ft, inst.target.target)) {
    std::string sig;
    for (const auto& t : ft) sig += (sig.empty() ? "" : " x ") + t.name;
    throw EngineError(ErrorKind::HypothesisViolation,
                      "multiplication " + sig + " -> " + inst.target.target.name + " is not registered", anchor);
  }

  Prepared p;
  p.aniso = inst.target.aniso;
  auto convert = [](const SpaceDescr& raw) {
    SpaceDescr sp = normalize(raw);
    Params q{sp.scale, sp.s_value(), Rational(0), Rational(0), Rational(0)};
    if (sp.scale != Scale::C0) {
      q.x = sp.x_value();
      q.y = sp.scale == Scale::B ? sp.y_value() : q.x;
      q.ind = sobolev_index(sp).constant;
    }
    if (q.scale == Scale::L && q.x.sign() > 0 && q.x < Rational(1)) q.scale = Scale::H;
    return q;
  };
  for (const auto& f : inst.factors) p.f.push_back(convert(f));
  p.t = convert(inst.target);

  std::vector<Params> every = p.f;
  every.push_back(p.t);
  bool scales_ok = std::all_of(every.begin(), every.end(),
                               [](const Params& q) { return q.scale == Scale::B || q.scale == Scale::H; });
  p.d.add("scales in {B, H}", anchor, scales_ok, scales_ok ? "" : "a factor or the target is not a B or H space");
  bool p_ok = std::all_of(every.begin(), every.end(), [](const Params& q) {
    return q.x.sign() > 0 && q.x < Rational(1);
  });
  p.d.add("1 < p_j, p < inf", anchor, p_ok);
  bool s_ok = std::all_of(every.begin(), every.end(), [](const Params& q) { return q.s.sign() >= 0; });
  p.d.add("0 <= s_j, s", anchor, s_ok);
  bool any_besov = std::any_of(every.begin(), every.end(), [](const Params& q) { return q.scale == Scale::B; });
  if (any_besov) {
    bool micro = std::all_of(every.begin(), every.end(),
                             [](const Params& q) { return q.scale != Scale::B || q.y == q.x; });
    p.d.add("Besov spaces have q = p", kMicro, micro,
            micro ? "" : "other micro-scales are outside the implemented rules");
  }
  return p;
}

}  // namespace

MultSignature MultInstance::signature() const {
  MultSignature sig;
  for (const auto& f : factors) sig.factors.push_back(f.target.name);
  sig.result = target.target.name;
  return sig;
}

bool MultInstance::symbolic() const {
  return target.symbolic() || std::any_of(factors.begin(), factors.end(), [](const auto& f) { return f.symbolic(); });
}

MultInstance MultInstance::at(const Rational& x) const {
  MultInstance out;
  for (const auto& f : factors) out.factors.push_back(f.at(x));
  out.target = target.at(x);
  return out;
}

std::string to_string(const MultInstance& inst) {
  std::string out;
  for (std::size_t j = 0; j < inst.factors.size(); ++j) out += (j ? " * " : "") + to_string(inst.factors[j]);
  return out + " -> " + to_string(inst.target);
}

Decision decide_multiplication(const MultInstance& inst, const SignatureRegistry& reg) {
  Prepared p = prepare(inst, reg, kMult);
  Decision& d = p.d;
  if (!d.covered()) return d;
  const auto& f = p.f;
  const Params& t = p.t;
  const std::size_t m = f.size();

  Rational min_s = f.front().s, sum_x(0);
  for (const auto& q : f) {
    min_s = min(min_s, q.s);
    sum_x += q.x;
  }
  bool i_strict = t.s < min_s;
  d.add("(i) s <= min s_j", kMultI, t.s <= min_s, "s = " + t.s.str() + ", min s_j = " + min_s.str());
  bool ii_strict = t.x < sum_x;
  bool ii_equal = t.x == sum_x;
  d.add("(ii) 1/p <= sum 1/p_j", kMultII, t.x <= sum_x, "1/p = " + t.x.str() + ", sum 1/p_j = " + sum_x.str());

  bool iii_ok = true, iii_strict = true;
  unsigned worst_mask = 1;
  Rational worst_gap;
  bool have_gap = false;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Rational sum(0);
    for (std::size_t j = 0; j < m; ++j)
      if (mask & (1u << j)) sum += f[j].ind;
    Rational gap = sum - t.ind;
    if (!have_gap || gap < worst_gap) {
      worst_gap = gap;
      worst_mask = mask;
      have_gap = true;
    }
    if (gap.sign() < 0) iii_ok = false;
    if (gap.sign() <= 0) iii_strict = false;
  }
  d.add("(iii) ind <= sum_{j in M} ind_j for all M", kMultIII, iii_ok,
        "ind = " + t.ind.str() + ", tightest M = " + join_indices(worst_mask, m) + " with slack " + worst_gap.str());

  bool mixed = false, a_ok = true;
  for (const auto& q : f)
    if (q.scale != t.scale) {
      mixed = true;
      if (!(q.s > t.s)) a_ok = false;
    }
  if (mixed) d.add("(a) s_j > s where X_j != X", kMultA, a_ok);
  else d.skip("(a) s_j > s where X_j != X", kMultA, "all factors share the target scale");

  if (t.scale == Scale::B) {
    bool b_ok = t.s.sign() > 0;
    for (const auto& q : f)
      if (q.s == t.s && q.x != t.x) b_ok = false;
    d.add("(b) s > 0 and p_j = p where s_j = s", kMultB, b_ok);
    Rational min_x = f.front().x;
    for (const auto& q : f) min_x = min(min_x, q.x);
    d.add("(c) (iii) strict or max p_j <= p", kMultC, iii_strict || t.x <= min_x,
          iii_strict ? "(iii) strict" : "1/p = " + t.x.str() + ", min 1/p_j = " + min_x.str());
    d.skip("(d) s in omega_dot N_0, (i) strict or equality in (ii)", kMultD, "X = B");
  } else {
    d.skip("(b) s > 0 and p_j = p where s_j = s", kMultB, "X = H");
    d.skip("(c) (iii) strict or max p_j <= p", kMultC, "X = H");
    bool lattice = in_omega_dot_lattice(t.s, p.aniso);
    d.add("(d) s in omega_dot N_0, (i) strict or equality in (ii)", kMultD, lattice || i_strict || ii_equal,
          "s = " + t.s.str() + ", omega_dot = " + std::to_string(p.aniso.omega_dot()));
  }

  if (mixed) d.add("(e) (ii) or (iii) strict", kMultE, ii_strict || iii_strict);
  else d.skip("(e) (ii) or (iii) strict", kMultE, "all factors share the target scale");

  bool zero_index = std::any_of(f.begin(), f.end(), [](const Params& q) { return q.ind.sign() == 0; });
  if (zero_index) d.add("(f) (iii) strict when some ind_j = 0", kMultF, iii_strict);
  else d.skip("(f) (iii) strict when some ind_j = 0", kMultF, "no ind_j vanishes");

  bool lebesgue = t.s.sign() == 0 && std::all_of(f.begin(), f.end(), [](const Params& q) {
    return q.s.sign() == 0 && q.scale == Scale::H;
  }) && t.scale == Scale::H;
  if (lebesgue)
    d.add("Hoelder case: (ii) and (iii) reduce to sum 1/p_j = 1/p", kHoelder, t.x == sum_x,
          "sum 1/p_j = " + sum_x.str() + ", 1/p = " + t.x.str());

  // Failures caused by (d) alone are flagged; they are a suspected artifact
  // of the proof rather than a genuine obstruction.
  std::size_t fails = 0;
  TraceEntry* d_entry = nullptr;
  for (auto& e : d.trace) {
    if (e.status == Status::Fail) ++fails;
    if (e.anchor == kMultD && e.status == Status::Fail) d_entry = &e;
  }
  if (fails == 1 && d_entry) d_entry->detail += "; (d)-only failure";
  return d;
}

Decision decide_multiplier(const MultInstance& inst, std::size_t ell, const SignatureRegistry& reg) {
  if (ell >= inst.factors.size())
    throw EngineError(ErrorKind::InvalidArgument, "multiplier position out of range");
  Prepared p = prepare(inst, reg, kMultiplier);
  Decision& d = p.d;
  if (!d.covered()) return d;
  const auto& f = p.f;
  const Params& t = p.t;
  const Params& l = f[ell];
  d.add("X_l = X, s_l = s, p_l = p", kMultiplier, l.scale == t.scale && l.s == t.s && l.x == t.x,
        "factor " + std::to_string(ell + 1) + " against the target");

  bool s_ok = true, pos_ok = true, dom_ok = true, mixed = false, a_ok = true;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!(t.s <= f[j].s)) s_ok = false;
    if (f[j].scale != t.scale) {
      mixed = true;
      if (!(f[j].s > t.s)) a_ok = false;
    }
    if (j == ell) continue;
    if (f[j].ind.sign() <= 0) pos_ok = false;
    if (f[j].ind < t.ind) dom_ok = false;
  }
  d.add("s <= s_j", kMultiplier, s_ok);
  std::string inds;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (j != ell) inds += (inds.empty() ? "" : ", ") + ("ind_" + std::to_string(j + 1) + " = " + f[j].ind.str());
  d.add("ind_j > 0 for j != l", kMultiplier, pos_ok, inds);
  d.add("ind_j >= ind for j != l", kMultiplier, dom_ok, "ind = " + t.ind.str() + "; " + inds);
  if (mixed) d.add("(a) s_j > s where X_j != X", kMultiplierA, a_ok);
  else d.skip("(a) s_j > s where X_j != X", kMultiplierA, "all factors share the target scale");
  if (t.scale == Scale::B) {
    bool b_ok = t.s.sign() > 0 && std::all_of(f.begin(), f.end(), [&](const Params& q) { return t.x <= q.x; });
    d.add("(b) s > 0 and p_j <= p", kMultiplierB, b_ok);
    d.skip("(c) s in omega_dot N_0", kMultiplierC, "X = B");
  } else {
    d.skip("(b) s > 0 and p_j <= p", kMultiplierB, "X = H");
    d.add("(c) s in omega_dot N_0", kMultiplierC, in_omega_dot_lattice(t.s, p.aniso),
          "s = " + t.s.str() + ", omega_dot = " + std::to_string(p.aniso.omega_dot()));
  }
  return d;
}

Decision decide_algebra(const SpaceDescr& space, const SignatureRegistry& reg) {
  if (!space.target.banach_algebra)
    throw EngineError(ErrorKind::HypothesisViolation,
                      "value space '" + space.target.name + "' is not a Banach algebra", kAlgebra);
  MultInstance inst{{space, space}, space};
  return decide_multiplier(inst, 0, reg);
}

Decision reduced_multiplication(const MultInstance& inst, const std::set<std::size_t>& omit,
                                const SignatureRegistry& reg) {
  if (omit.empty() || omit.size() >= inst.factors.size() || *omit.rbegin() >= inst.factors.size())
    throw EngineError(ErrorKind::InvalidArgument, "the omitted factors must form a nonempty proper subset");
  for (std::size_t j : omit)
    if (!inst.factors[j].target.unital)
      throw EngineError(ErrorKind::HypothesisViolation,
                        "omitted factor " + std::to_string(j + 1) + " has a non-unital value space", kReduced);
  Decision full = decide_multiplication(inst, reg);
  Decision d;
  for (auto e : full.trace) {
    e.label = "full instance: " + e.label;
    d.trace.push_back(e);
  }
  Rational x = normalize(inst.target).x_value();
  Rational min_x = normalize(inst.factors.front()).x_value();
  for (const auto& f : inst.factors) min_x = min(min_x, f.x_value());
  d.add("max p_j <= p", kReduced, x <= min_x, "1/p = " + x.str() + ", min 1/p_j = " + min_x.str());
  return d;
}

std::pair<MultInstance, Decision> interpolation_closure(const MultInstance& a, const MultInstance& b,
                                                        const Rational& theta, bool assert_a, bool assert_b,
                                                        const SignatureRegistry& reg) {
  if (a.factors.size() != b.factors.size())
    throw EngineError(ErrorKind::InvalidArgument, "interpolated products need the same number of factors");
  if (theta < Rational(0) || Rational(1) < theta)
    throw EngineError(ErrorKind::InvalidArgument, "theta must lie in [0,1]");
  Decision d;
  auto parent = [&](const MultInstance& inst, bool asserted, const char* name) {
    Decision pd = decide_multiplication(inst, reg);
    if (!pd.covered() && !asserted)
      throw EngineError(ErrorKind::ClosureFromUncovered,
                        std::string("parent ") + name + " is not covered and was not asserted", kClosure);
    d.add(std::string("parent ") + name + (pd.covered() ? " covered" : " asserted"), kClosure, true,
          to_string(inst));
  };
  parent(a, assert_a, "A");
  parent(b, assert_b, "B");
  if (theta.sign() == 0) return {a, d};
  if (theta == Rational(1)) return {b, d};
  MultInstance out;
  for (std::size_t j = 0; j < a.factors.size(); ++j)
    out.factors.push_back(interpolate_complex(a.factors[j], b.factors[j], theta));
  out.target = interpolate_complex(a.target, b.target, theta);
  d.add("multilinear complex interpolation", kClosure, true, "theta = " + theta.str());
  return {out, d};
}

}  // namespace anisocalc
