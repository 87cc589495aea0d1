#include "anisocalc/spaces.hpp"

#include <algorithm>
#include <numeric>

#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

constexpr const char* kIdentification = "Prop W-Identification";
constexpr const char* kIntersection = "Eq. Anisotropic-Intersection";

bool is_scalar(const TargetSpace& t) { return t.name == "R" || t.name == "C"; }

std::string rational_token(const Rational& r) {
  return r.is_integer() ? r.str() : "{" + r.str() + "}";
}

// Writes an affine expression in x = 1/p back in query syntax.
std::string dsl_expr(const AffineExpr& e) {
  std::string out;
  if (e.constant.sign() != 0 || e.is_constant()) out = e.constant.str();
  if (!e.is_constant()) {
    Rational a = e.slope.abs();
    std::string body = std::to_string(a.numerator()) + "/" +
                       (a.denominator() == 1 ? "" : std::to_string(a.denominator())) + "p";
    if (out.empty()) out = (e.slope.sign() < 0 ? "-" : "") + body;
    else out += (e.slope.sign() < 0 ? "-" : "+") + body;
  }
  return out;
}

std::string dsl_integrability(const AffineExpr& x) {
  if (x.is_constant()) {
    if (x.constant.sign() == 0) return "{inf}";
    return rational_token(Rational(1) / x.constant);
  }
  if (x.constant.sign() != 0)
    throw EngineError(ErrorKind::Unsupported, "integrability 1/p = " + x.str() + " has no query form");
  Rational c = Rational(1) / x.slope;  // p-expression is c*p
  if (c == Rational(1)) return "p";
  if (c.is_integer()) return "{" + c.str() + "p}";
  return "{" + c.str() + "*p}";
}

void check_target(const SpaceDescr& sp) {
  if (!sp.target.umd)
    throw EngineError(ErrorKind::HypothesisViolation,
                      "target '" + sp.target.name + "' is not a UMD space", kIdentification);
  if (!sp.aniso.uniform() && !sp.target.prop_alpha)
    throw EngineError(ErrorKind::HypothesisViolation,
                      "target '" + sp.target.name + "' lacks property (alpha) on an anisotropic domain",
                      kIdentification);
}

}  // namespace

const char* to_string(Scale scale) {
  switch (scale) {
    case Scale::B: return "B";
    case Scale::H: return "H";
    case Scale::W: return "W";
    case Scale::L: return "L";
    case Scale::C0: return "C0";
  }
  return "?";
}

Anisotropy Anisotropy::make(std::vector<int> dims, std::vector<int> weights) {
  if (dims.empty() || dims.size() != weights.size())
    throw EngineError(ErrorKind::InvalidArgument, "dims and weights must be nonempty and of equal length");
  for (size_t k = 0; k < dims.size(); ++k)
    if (dims[k] < 1 || weights[k] < 1)
      throw EngineError(ErrorKind::InvalidArgument, "dims and weights must be positive integers");
  return {std::move(dims), std::move(weights)};
}

Anisotropy Anisotropy::isotropic(int n) { return make({n}, {1}); }

long Anisotropy::omega_dot() const { return lcm_of(weights); }

long Anisotropy::omega_dot_n() const {
  long sum = 0;
  for (size_t k = 0; k < dims.size(); ++k) sum += static_cast<long>(dims[k]) * weights[k];
  return sum;
}

bool Anisotropy::uniform() const {
  return std::all_of(weights.begin(), weights.end(), [&](int w) { return w == weights.front(); });
}

SpaceDescr SpaceDescr::at(const Rational& x_value) const {
  SpaceDescr out = *this;
  out.s = s.at(x_value);
  out.x = x.at(x_value);
  return out;
}

Rational SpaceDescr::s_value() const {
  if (!s.is_constant())
    throw EngineError(ErrorKind::Unsupported, "symbolic smoothness; use a parameter solve");
  return s.constant;
}

Rational SpaceDescr::x_value() const {
  if (!x.is_constant())
    throw EngineError(ErrorKind::Unsupported, "symbolic integrability; use a parameter solve");
  return x.constant;
}

Rational SpaceDescr::y_value() const { return y ? *y : x_value(); }

void SpaceDescr::validate() const {
  auto fail = [&](const std::string& why) {
    throw EngineError(ErrorKind::InvalidArgument, to_string(*this) + ": " + why);
  };
  Anisotropy::make(aniso.dims, aniso.weights);
  const Rational zero(0), one(1);
  if ((scale == Scale::L || scale == Scale::C0) && !(s == AffineExpr(0))) fail("smoothness must be 0");
  if (scale == Scale::W && s.is_constant() && s.constant < zero) fail("W needs s >= 0");
  if (y && scale != Scale::B) fail("a micro-scale q is only meaningful on the Besov scale");
  if (y && (*y < zero || one < *y)) fail("1/q must lie in [0,1]");
  if (scale != Scale::C0 && x.is_constant()) {
    const Rational& v = x.constant;
    switch (scale) {
      case Scale::H:
      case Scale::W:
        if (!(zero < v && v < one)) fail("needs 1 < p < inf");
        break;
      case Scale::B:
        if (!(zero <= v && v < one)) fail("needs 1 < p <= inf");
        break;
      case Scale::L:
        if (!(zero <= v && v <= one)) fail("needs 1 <= p <= inf");
        break;
      default: break;
    }
  }
}

std::string to_string(const SpaceDescr& sp) {
  std::string out = to_string(sp.scale);
  bool show_weights = sp.aniso.nu() > 1 || sp.aniso.weights.front() != 1;
  std::string weights;
  if (show_weights) {
    weights = "(";
    for (size_t k = 0; k < sp.aniso.weights.size(); ++k)
      weights += (k ? "," : "") + std::to_string(sp.aniso.weights[k]);
    weights += ")";
  }
  if (sp.scale == Scale::C0) {
    if (show_weights) out += "^{" + weights + "}";
    out += "(" + sp.domain;
  } else {
    if (sp.scale != Scale::L) out += "^{" + dsl_expr(sp.s) + (show_weights ? "," + weights : "") + "}";
    else if (show_weights) out += "^{" + weights + "}";
    out += "_" + dsl_integrability(sp.x);
    if (sp.y) out += "_" + dsl_integrability(AffineExpr(*sp.y));
    out += "(" + sp.domain;
  }
  if (sp.target.name != "R") out += ";" + sp.target.name;
  return out + ")";
}

bool in_omega_dot_lattice(const Rational& s, const Anisotropy& aniso) {
  if (s.sign() < 0) return false;
  Rational q = s / Rational(aniso.omega_dot());
  return q.is_integer();
}

AffineExpr sobolev_index(const SpaceDescr& sp) {
  if (sp.scale == Scale::C0)
    throw EngineError(ErrorKind::Unsupported, "C0 has no Sobolev index");
  return (sp.s - sp.x * Rational(sp.aniso.omega_dot_n())) / Rational(sp.aniso.omega_dot());
}

SpaceDescr normalize(const SpaceDescr& sp) {
  sp.validate();
  SpaceDescr out = sp;
  switch (sp.scale) {
    case Scale::W: {
      check_target(sp);
      Rational s = sp.s_value();
      if (s.sign() == 0) {
        out.scale = Scale::L;
      } else if (in_omega_dot_lattice(s, sp.aniso)) {
        out.scale = Scale::H;
      } else {
        for (int w : sp.aniso.weights)
          if ((s / Rational(w)).is_integer())
            throw EngineError(ErrorKind::NotIdentifiable,
                              to_string(sp) + ": s = " + s.str() + " is not in " +
                                  std::to_string(sp.aniso.omega_dot()) + "N_0 but s/" +
                                  std::to_string(w) + " is an integer",
                              kIdentification);
        out.scale = Scale::B;
        out.y.reset();
      }
      break;
    }
    case Scale::B:
      check_target(sp);
      if (sp.y && sp.x.is_constant() && *sp.y == sp.x.constant) out.y.reset();
      break;
    case Scale::H:
      check_target(sp);
      break;
    default:
      break;
  }
  return out;
}

SpaceDescr recognize_intersection(const std::vector<SliceSpace>& input,
                                  const std::optional<std::vector<int>>& weights,
                                  const std::string& domain) {
  auto fail = [](const std::string& why) {
    throw EngineError(ErrorKind::NotAnIntersectionForm, why, kIntersection);
  };
  if (input.empty()) fail("no slices");
  std::vector<SliceSpace> slices = input;
  std::sort(slices.begin(), slices.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  for (size_t i = 0; i < slices.size(); ++i)
    if (slices[i].k != static_cast<int>(i) + 1) fail("slice positions must be 1..nu without gaps");
  if (slices.size() == 1) return slices.front().space;

  const SpaceDescr& first = slices.front().space;
  if (first.scale != Scale::W && first.scale != Scale::H && first.scale != Scale::B)
    fail("slices must lie on the W, H or B scale");
  std::vector<int> dims;
  for (const auto& sl : slices) {
    const SpaceDescr& sp = sl.space;
    if (sp.aniso.nu() != 1 || sp.aniso.weights.front() != 1) fail("each slice must be isotropic over R^{n_k}");
    if (sp.scale != first.scale || !(sp.x == first.x) || sp.y != first.y || !(sp.target == first.target))
      fail("slices must share scale, integrability and value space");
    dims.push_back(sp.aniso.dims.front());
  }
  if (first.scale == Scale::B && first.y && !(first.x == AffineExpr(*first.y)))
    fail("Besov slices fold only for q = p");

  std::vector<int> w;
  if (weights) {
    if (weights->size() != slices.size()) fail("weight count differs from slice count");
    w = *weights;
  } else if (first.s == AffineExpr(0)) {
    w.assign(slices.size(), 1);
  } else {
    // s_k = s / omega_k, so omega_k is proportional to s_1 / s_k.
    std::vector<Rational> inv;
    for (const auto& sl : slices) {
      const AffineExpr& sk = sl.space.s;
      Rational ratio = first.s.is_constant() ? sk.constant / first.s.constant : sk.slope / first.s.slope;
      if (ratio.sign() <= 0 || !(sk == first.s * ratio)) fail("slice smoothness values are not proportional");
      inv.push_back(Rational(1) / ratio);
    }
    long den_lcm = 1;
    for (const auto& r : inv) den_lcm = std::lcm(den_lcm, r.denominator());
    long num_gcd = 0;
    for (const auto& r : inv) num_gcd = std::gcd(num_gcd, (r * Rational(den_lcm)).numerator());
    for (const auto& r : inv) w.push_back(static_cast<int>((r * Rational(den_lcm)).numerator() / num_gcd));
  }
  AffineExpr s = first.s * Rational(w.front());
  for (size_t i = 0; i < slices.size(); ++i)
    if (!(slices[i].space.s * Rational(w[i]) == s)) fail("s_k * omega_k is not constant across slices");

  SpaceDescr out = first;
  out.s = s;
  out.aniso = Anisotropy::make(dims, w);
  if (!domain.empty()) {
    out.domain = domain;
  } else {
    out.domain.clear();
    for (size_t i = 0; i < slices.size(); ++i) out.domain += (i ? "x" : "") + slices[i].space.domain;
  }
  return out;
}

std::vector<SliceSpace> expand_intersection(const SpaceDescr& sp,
                                            const std::vector<std::string>& slice_domains) {
  std::vector<SliceSpace> out;
  for (int k = 0; k < sp.aniso.nu(); ++k) {
    SpaceDescr slice = sp;
    slice.s = sp.s / Rational(sp.aniso.weights[k]);
    slice.aniso = Anisotropy::isotropic(sp.aniso.dims[k]);
    slice.domain = k < static_cast<int>(slice_domains.size())
                       ? slice_domains[k]
                       : "R^{" + std::to_string(sp.aniso.dims[k]) + "}";
    out.push_back({k + 1, slice});
  }
  return out;
}

bool SignatureRegistry::admits(const std::vector<TargetSpace>& factors, const TargetSpace& result) const {
  MultSignature sig;
  for (const auto& f : factors) sig.factors.push_back(f.name);
  sig.result = result.name;
  if (explicit_.count(sig)) return true;
  bool all_same = std::all_of(factors.begin(), factors.end(), [&](const auto& f) { return f == result; });
  if (all_same && result.banach_algebra) return true;
  std::vector<const TargetSpace*> non_scalar;
  for (const auto& f : factors)
    if (!is_scalar(f)) non_scalar.push_back(&f);
  if (non_scalar.empty()) return is_scalar(result);
  return non_scalar.size() == 1 && *non_scalar.front() == result;
}

const SignatureRegistry& SignatureRegistry::defaults() {
  static const SignatureRegistry reg;
  return reg;
}

}  // namespace anisocalc
