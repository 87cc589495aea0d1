#include "anisocalc/embed.hpp"

#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

constexpr const char* kBesov = "Eq. Besov-Embedding";
constexpr const char* kBessel = "Eq. Bessel-Potential-Embedding";
constexpr const char* kBesovBessel = "Eq. Besov-Bessel-Potential-Embedding";
constexpr const char* kBesselBesov = "Eq. Bessel-Potential-Besov-Embedding";
constexpr const char* kBesselLebesgue = "Eq. Bessel-Potential-Lebesgue-Embedding";
constexpr const char* kBesovLebesgue = "Eq. Besov-Lebesgue-Embedding";
constexpr const char* kContinuous = "Thm Algebra-Anisotropic (a)";
constexpr const char* kRules = "Appendix embedding rules";
constexpr const char* kComplexBesov = "Eq. Besov-Complex-Interpolation";
constexpr const char* kComplexBessel = "Eq. Bessel-Potential-Complex-Interpolation";
constexpr const char* kComplexLebesgue = "Eq. Lebesgue-Complex-Interpolation";
constexpr const char* kRealBesov = "Eq. Besov-Real-Interpolation";
constexpr const char* kRealBessel = "Eq. Bessel-Potential-Real-Interpolation";
constexpr const char* kRealLebesgue = "Eq. Lebesgue-Real-Interpolation";

// Concrete parameters of a normalized space.
struct View {
  Scale scale;
  Rational s, x, y, ind;
};

View view(const SpaceDescr& sp) {
  View v{sp.scale, sp.s_value(), sp.x_value(), Rational(0), Rational(0)};
  v.y = sp.scale == Scale::B ? sp.y_value() : v.x;
  if (sp.scale != Scale::C0) v.ind = sobolev_index(sp).constant;
  return v;
}

std::string rel(const std::string& a, const Rational& va, const char* op, const std::string& b,
                const Rational& vb) {
  return a + " = " + va.str() + " " + op + " " + b + " = " + vb.str();
}

void check_compatible(const SpaceDescr& a, const SpaceDescr& b) {
  if (!(a.aniso == b.aniso) || a.domain != b.domain)
    throw EngineError(ErrorKind::IncompatibleSpaces,
                      to_string(a) + " and " + to_string(b) + " live on different domains");
  if (!(a.target == b.target))
    throw EngineError(ErrorKind::IncompatibleSpaces,
                      to_string(a) + " and " + to_string(b) + " have different value spaces");
}

Decision rule_bb(const View& a, const View& b) {
  Decision d;
  d.add("s_0 <= s_1", kBesov, b.s <= a.s, rel("s_0", b.s, "<=", "s_1", a.s));
  d.add("p_1 <= p_0", kBesov, b.x <= a.x, rel("1/p_0", b.x, "<=", "1/p_1", a.x));
  d.add("ind_0 <= ind_1", kBesov, b.ind <= a.ind, rel("ind_0", b.ind, "<=", "ind_1", a.ind));
  d.add("ind_0 < ind_1 or q_1 <= q_0", kBesov, b.ind < a.ind || b.y <= a.y,
        "1/q_1 = " + a.y.str() + ", 1/q_0 = " + b.y.str());
  return d;
}

Decision rule_hh(const View& a, const View& b) {
  Decision d;
  d.add("s_0 <= s_1", kBessel, b.s <= a.s, rel("s_0", b.s, "<=", "s_1", a.s));
  d.add("p_1 <= p_0", kBessel, b.x <= a.x, rel("1/p_0", b.x, "<=", "1/p_1", a.x));
  d.add("ind_0 <= ind_1", kBessel, b.ind <= a.ind, rel("ind_0", b.ind, "<=", "ind_1", a.ind));
  return d;
}

Decision rule_bh(const View& a, const View& b) {
  Decision d;
  d.add("s_0 < s_1", kBesovBessel, b.s < a.s, rel("s_0", b.s, "<", "s_1", a.s));
  d.add("p_1 <= p_0", kBesovBessel, b.x <= a.x, rel("1/p_0", b.x, "<=", "1/p_1", a.x));
  d.add("ind(H) <= ind(B)", kBesovBessel, b.ind <= a.ind, rel("ind(H)", b.ind, "<=", "ind(B)", a.ind));
  d.add("ind(H) < ind(B) or q <= p_0", kBesovBessel, b.ind < a.ind || b.x <= a.y,
        "1/q = " + a.y.str() + ", 1/p_0 = " + b.x.str());
  return d;
}

Decision rule_hb(const View& a, const View& b) {
  Decision d;
  d.add("s_0 < s_1", kBesselBesov, b.s < a.s, rel("s_0", b.s, "<", "s_1", a.s));
  d.add("p_1 <= p_0", kBesselBesov, b.x <= a.x, rel("1/p_0", b.x, "<=", "1/p_1", a.x));
  d.add("ind(B) <= ind(H)", kBesselBesov, b.ind <= a.ind, rel("ind(B)", b.ind, "<=", "ind(H)", a.ind));
  d.add("ind(B) < ind(H) or p_1 <= q", kBesselBesov, b.ind < a.ind || b.y <= a.x,
        "1/p_1 = " + a.x.str() + ", 1/q = " + b.y.str());
  return d;
}

Decision rule_hl(const View& a, const View& b) {
  Decision d;
  d.add("0 <= s", kBesselLebesgue, a.s.sign() >= 0, "s = " + a.s.str());
  d.add("p <= r", kBesselLebesgue, b.x <= a.x, rel("1/r", b.x, "<=", "1/p", a.x));
  d.add("omega-ind(L_r) <= ind", kBesselLebesgue, b.ind <= a.ind,
        rel("omega-ind(L_r)", b.ind, "<=", "ind", a.ind));
  d.add("strict index or r < inf", kBesselLebesgue, b.ind < a.ind || b.x.sign() > 0,
        "1/r = " + b.x.str());
  return d;
}

Decision rule_bl(const View& a, const View& b) {
  Decision d;
  d.add("0 < s", kBesovLebesgue, a.s.sign() > 0, "s = " + a.s.str());
  d.add("p <= r", kBesovLebesgue, b.x <= a.x, rel("1/r", b.x, "<=", "1/p", a.x));
  d.add("r != 1", kBesovLebesgue, b.x != Rational(1), "1/r = " + b.x.str());
  d.add("omega-ind(L_r) <= ind", kBesovLebesgue, b.ind <= a.ind,
        rel("omega-ind(L_r)", b.ind, "<=", "ind", a.ind));
  d.add("strict index or (q <= p and r < inf)", kBesovLebesgue,
        b.ind < a.ind || (a.x <= a.y && b.x.sign() > 0),
        "1/q = " + a.y.str() + ", 1/p = " + a.x.str() + ", 1/r = " + b.x.str());
  return d;
}

Decision rule_c0(const View& a) {
  Decision d;
  d.add("0 < s", kContinuous, a.s.sign() > 0, "s = " + a.s.str());
  d.add("1 < p < inf", kContinuous, a.x.sign() > 0 && a.x < Rational(1), "1/p = " + a.x.str());
  d.add("ind > 0", kContinuous, a.ind.sign() > 0, "ind = " + a.ind.str());
  return d;
}

Decision no_rule(Scale from, Scale to) {
  Decision d;
  d.add("implemented rule", kRules, false,
        std::string("no rule embeds ") + to_string(from) + " into " + to_string(to));
  return d;
}

// L_p is H^0_p for 1 < p < inf; the Bessel potential rules then apply.
SpaceDescr as_bessel(SpaceDescr sp) {
  if (sp.scale == Scale::L && sp.x.is_constant() && sp.x.constant.sign() > 0 && sp.x.constant < Rational(1))
    sp.scale = Scale::H;
  return sp;
}

AffineExpr convex(const AffineExpr& a, const AffineExpr& b, const Rational& t) {
  return a * (Rational(1) - t) + b * t;
}

void check_theta(const Rational& theta) {
  if (!(Rational(0) < theta && theta < Rational(1)))
    throw EngineError(ErrorKind::InvalidArgument, "theta must lie in (0,1)");
}

void require_positive(const AffineExpr& v, const char* what, const char* anchor) {
  if (v.is_constant() && v.constant.sign() <= 0)
    throw EngineError(ErrorKind::NoInterpolationRule, std::string(what) + " must be finite", anchor);
}

}  // namespace

Decision embeds_direct(const SpaceDescr& src_in, const SpaceDescr& dst_in) {
  check_compatible(src_in, dst_in);
  SpaceDescr src = normalize(src_in);
  SpaceDescr dst = normalize(dst_in);
  if (dst.scale == Scale::C0) {
    if (src.scale == Scale::C0) {
      Decision d;
      d.add("identity", kRules, true);
      return d;
    }
    if (src.scale == Scale::L) return no_rule(src.scale, dst.scale);
    return rule_c0(view(src));
  }
  if (src.scale == Scale::C0) return no_rule(src.scale, dst.scale);
  SpaceDescr a = as_bessel(src);
  if (a.scale == Scale::L) return no_rule(src.scale, dst.scale);
  if (dst.scale == Scale::L) {
    View va = view(a), vb = view(dst);
    return a.scale == Scale::H ? rule_hl(va, vb) : rule_bl(va, vb);
  }
  SpaceDescr b = dst;
  View va = view(a), vb = view(b);
  if (a.scale == Scale::B && b.scale == Scale::B) return rule_bb(va, vb);
  if (a.scale == Scale::H && b.scale == Scale::H) return rule_hh(va, vb);
  if (a.scale == Scale::B) return rule_bh(va, vb);
  return rule_hb(va, vb);
}

Decision embeds(const SpaceDescr& src, const SpaceDescr& dst) {
  Decision direct = embeds_direct(src, dst);
  if (direct.covered()) return direct;
  SpaceDescr a = normalize(src), b = normalize(dst);
  bool both_besov = a.scale == Scale::B && b.scale == Scale::B;
  bool both_bessel = a.scale == Scale::H && b.scale == Scale::H;
  if (!both_besov && !both_bessel) return direct;

  SpaceDescr mid = a;
  mid.scale = both_besov ? Scale::H : Scale::B;
  mid.y.reset();
  mid.s = AffineExpr((a.s_value() + b.s_value()) / Rational(2));
  Rational ind = sobolev_index(a).constant;
  Rational x_mid = (mid.s.constant - ind * Rational(a.aniso.omega_dot())) / Rational(a.aniso.omega_dot_n());
  if (!(Rational(0) < x_mid && x_mid < Rational(1))) {
    direct.skip("intermediate space", kRules, "no admissible intermediate space");
    return direct;
  }
  mid.x = AffineExpr(x_mid);
  Decision first = embeds_direct(a, mid);
  Decision second = embeds_direct(mid, b);
  if (!first.covered() || !second.covered()) {
    direct.skip("intermediate space", kRules, to_string(mid) + " does not bridge the gap");
    return direct;
  }
  Decision out;
  out.add("intermediate space", kRules, true, to_string(mid));
  for (auto e : first.trace) {
    e.label = "leg 1: " + e.label;
    out.trace.push_back(e);
  }
  for (auto e : second.trace) {
    e.label = "leg 2: " + e.label;
    out.trace.push_back(e);
  }
  out.settle();
  return out;
}

SpaceDescr slice_embed(const SpaceDescr& src_in, int k) {
  SpaceDescr src = normalize(src_in);
  if (src.scale != Scale::B)
    throw EngineError(ErrorKind::WrongScale, "slice embedding needs a Besov space", "Eq. Besov-Slices");
  if (k < 1 || k > src.aniso.nu())
    throw EngineError(ErrorKind::BadSlice,
                      "slice " + std::to_string(k) + " out of range 1.." + std::to_string(src.aniso.nu()));
  if (src.aniso.nu() == 1) return src_in;
  std::string rest;
  for (int j = 0; j < src.aniso.nu(); ++j) {
    if (j == k - 1) continue;
    rest += (rest.empty() ? "R^{" : "x") + std::to_string(src.aniso.dims[j]);
  }
  rest += "}";
  SpaceDescr out = src;
  out.s = src.s / Rational(src.aniso.weights[k - 1]);
  out.aniso = Anisotropy::isotropic(src.aniso.dims[k - 1]);
  out.domain = "R^{" + std::to_string(src.aniso.dims[k - 1]) + "}";
  out.target = TargetSpace{"L_p(" + rest + "," + src.target.name + ")", src.target.umd, src.target.prop_alpha,
                           false, false};
  return out;
}

SpaceDescr interpolate_complex(const SpaceDescr& a_in, const SpaceDescr& b_in, const Rational& theta) {
  check_theta(theta);
  check_compatible(a_in, b_in);
  SpaceDescr a = normalize(a_in), b = normalize(b_in);
  SpaceDescr out = a;
  if (a.scale == Scale::B && b.scale == Scale::B) {
    require_positive(a.x, "p_0", kComplexBesov);
    require_positive(b.x, "p_1", kComplexBesov);
    AffineExpr ya = a.y ? AffineExpr(*a.y) : a.x, yb = b.y ? AffineExpr(*b.y) : b.x;
    require_positive(ya, "q_0", kComplexBesov);
    require_positive(yb, "q_1", kComplexBesov);
    out.s = convex(a.s, b.s, theta);
    out.x = convex(a.x, b.x, theta);
    AffineExpr y = convex(ya, yb, theta);
    if (y == out.x) out.y.reset();
    else if (y.is_constant()) out.y = y.constant;
    else throw EngineError(ErrorKind::Unsupported, "symbolic micro-scale after interpolation");
    return out;
  }
  if (a.scale == Scale::L && b.scale == Scale::L) {
    require_positive(a.x, "p_0", kComplexLebesgue);
    require_positive(b.x, "p_1", kComplexLebesgue);
    out.x = convex(a.x, b.x, theta);
    return out;
  }
  bool bessel_a = a.scale == Scale::H || a.scale == Scale::L;
  bool bessel_b = b.scale == Scale::H || b.scale == Scale::L;
  if (bessel_a && bessel_b) {
    out.scale = Scale::H;
    if (a.x == b.x) {
      out.s = convex(a.s, b.s, theta);
      return out;
    }
    if (a.s == b.s) {
      out.x = convex(a.x, b.x, theta);
      return out;
    }
    throw EngineError(ErrorKind::NoInterpolationRule,
                      "complex interpolation of Bessel potential spaces needs equal p or equal s", kComplexBessel);
  }
  throw EngineError(ErrorKind::NoInterpolationRule,
                    std::string("no complex interpolation rule for ") + to_string(a.scale) + " and " +
                        to_string(b.scale));
}

SpaceDescr interpolate_real(const SpaceDescr& a_in, const SpaceDescr& b_in, const Rational& theta,
                            const std::optional<Rational>& y) {
  check_theta(theta);
  check_compatible(a_in, b_in);
  SpaceDescr a = normalize(a_in), b = normalize(b_in);
  SpaceDescr out = a;
  bool bessel_a = a.scale == Scale::H || a.scale == Scale::L;
  bool bessel_b = b.scale == Scale::H || b.scale == Scale::L;
  if (a.scale == Scale::L && b.scale == Scale::L && !y) {
    require_positive(a.x, "p_0", kRealLebesgue);
    require_positive(b.x, "p_1", kRealLebesgue);
    out.x = convex(a.x, b.x, theta);
    return out;
  }
  if (bessel_a && bessel_b) {
    if (a.x == b.x && !(a.s == b.s)) {
      out.scale = Scale::B;
      out.s = convex(a.s, b.s, theta);
      if (y && !(AffineExpr(*y) == out.x)) out.y = *y;
      return out;
    }
    if (a.s == b.s && !y) {
      out.scale = Scale::H;
      out.x = convex(a.x, b.x, theta);
      return out;
    }
    throw EngineError(ErrorKind::NoInterpolationRule,
                      "real interpolation of Bessel potential spaces needs (equal p, s_0 != s_1) or "
                      "(equal s, q = p)",
                      kRealBessel);
  }
  if (a.scale == Scale::B && b.scale == Scale::B) {
    if (a.x == b.x && !(a.s == b.s)) {
      out.s = convex(a.s, b.s, theta);
      out.y = y;
      if (y && AffineExpr(*y) == out.x) out.y.reset();
      return out;
    }
    if (!y) {
      require_positive(a.x, "p_0", kRealBesov);
      require_positive(b.x, "p_1", kRealBesov);
      AffineExpr ya = a.y ? AffineExpr(*a.y) : a.x, yb = b.y ? AffineExpr(*b.y) : b.x;
      require_positive(ya, "q_0", kRealBesov);
      require_positive(yb, "q_1", kRealBesov);
      AffineExpr x = convex(a.x, b.x, theta);
      if (!(convex(ya, yb, theta) == x))
        throw EngineError(ErrorKind::NoInterpolationRule,
                          "coupled Besov real interpolation needs 1/p = (1-theta)/q_0 + theta/q_1", kRealBesov);
      out.s = convex(a.s, b.s, theta);
      out.x = x;
      out.y.reset();
      return out;
    }
    throw EngineError(ErrorKind::NoInterpolationRule,
                      "real Besov interpolation with explicit q needs equal p and s_0 != s_1", kRealBesov);
  }
  throw EngineError(ErrorKind::NoInterpolationRule,
                    std::string("no real interpolation rule for ") + to_string(a.scale) + " and " +
                        to_string(b.scale));
}

}  // namespace anisocalc
