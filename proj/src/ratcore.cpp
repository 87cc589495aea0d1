#include "anisocalc/ratcore.hpp"

#include <numeric>

#include "anisocalc/errors.hpp"

namespace anisocalc {

Rational::Rational(long n, long d) {
  if (d == 0) throw EngineError(ErrorKind::InvalidArgument, "zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto parse_int = [&](const std::string& part) {
    mpz_class z;
    if (part.empty() || z.set_str(part.front() == '+' ? part.substr(1) : part, 10) != 0)
      throw EngineError(ErrorKind::InvalidArgument, "not a rational: '" + s + "'");
    return z;
  };
  if (slash == std::string::npos) return Rational(mpq_class(parse_int(s)));
  mpz_class num = parse_int(s.substr(0, slash));
  mpz_class den = parse_int(s.substr(slash + 1));
  if (den == 0) throw EngineError(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
  return Rational(mpq_class(num, den));
}

long Rational::numerator() const { return v_.get_num().get_si(); }
long Rational::denominator() const { return v_.get_den().get_si(); }
bool Rational::is_integer() const { return v_.get_den() == 1; }

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rational::str() const { return v_.get_str(); }

Rational& Rational::operator+=(const Rational& o) { v_ += o.v_; return *this; }
Rational& Rational::operator-=(const Rational& o) { v_ -= o.v_; return *this; }
Rational& Rational::operator*=(const Rational& o) { v_ *= o.v_; return *this; }
Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw EngineError(ErrorKind::InvalidArgument, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

long lcm_of(const std::vector<int>& values) {
  long l = 1;
  for (int v : values) l = std::lcm(l, static_cast<long>(v));
  return l;
}

std::optional<Rational> AffineExpr::root() const {
  if (is_constant()) return std::nullopt;
  return -constant / slope;
}

namespace {

// Appends "+ k<tail>" / "- k<tail>" with unit coefficients collapsed.
void append_term(std::string& out, const Rational& k, const std::string& tail) {
  Rational a = k.abs();
  std::string body;
  if (a == Rational(1) && !tail.empty()) body = tail;
  else body = a.str() + (tail.empty() ? "" : " " + tail);
  if (out.empty()) out = (k.sign() < 0 ? "-" : "") + body;
  else out += (k.sign() < 0 ? " - " : " + ") + body;
}

}  // namespace

std::string AffineExpr::str(std::string_view var) const {
  std::string out;
  if (constant.sign() != 0 || is_constant()) out = constant.str();
  if (!is_constant()) append_term(out, slope, std::string(var));
  return out;
}

std::string AffineExpr::p_str() const {
  std::string out;
  if (constant.sign() != 0 || is_constant()) out = constant.str();
  if (!is_constant()) {
    Rational a = slope.abs();
    std::string body = a.is_integer() ? a.str() + "/p"
                                      : std::to_string(a.numerator()) + "/(" +
                                            std::to_string(a.denominator()) + "p)";
    if (out.empty()) out = (slope.sign() < 0 ? "-" : "") + body;
    else out += (slope.sign() < 0 ? " - " : " + ") + body;
  }
  return out;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  constant += o.constant;
  slope += o.slope;
  return *this;
}
AffineExpr& AffineExpr::operator-=(const AffineExpr& o) {
  constant -= o.constant;
  slope -= o.slope;
  return *this;
}
AffineExpr& AffineExpr::operator*=(const Rational& k) {
  constant *= k;
  slope *= k;
  return *this;
}
AffineExpr& AffineExpr::operator/=(const Rational& k) {
  constant /= k;
  slope /= k;
  return *this;
}

int SignPartition::sign_at(const Rational& x) const {
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    if (x < breakpoints[i]) return cell_signs[i];
    if (x == breakpoints[i]) return point_signs[i];
  }
  return cell_signs.back();
}

bool SignPartition::holds_at(const Rational& x) const {
  int s = sign_at(x);
  return strict ? s < 0 : s <= 0;
}

SignPartition affine_compare(const AffineExpr& lhs, const AffineExpr& rhs, bool strict) {
  AffineExpr d = lhs - rhs;
  SignPartition out;
  out.strict = strict;
  auto r = d.root();
  if (r && Rational(0) < *r && *r < Rational(1)) {
    out.breakpoints.push_back(*r);
    out.cell_signs = {d.at(*r / 2).sign(), d.at((*r + 1) / 2).sign()};
    out.point_signs = {0};
  } else {
    out.cell_signs = {d.at(Rational(1, 2)).sign()};
  }
  return out;
}

}  // namespace anisocalc
