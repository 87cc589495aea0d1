#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace anisocalc {

/// Exact rational number. All smoothness, integrability and index values
/// in the engine are Rationals; doubles appear only in normlab.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(mpq_class v);

  /// Accepts "a", "a/b" and "-a/b".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  long numerator() const;
  long denominator() const;
  bool is_integer() const;
  int sign() const { return sgn(v_); }
  Rational floor() const;
  Rational abs() const;
  double to_double() const { return v_.get_d(); }
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
long lcm_of(const std::vector<int>& values);

/// c + m*x, where x = 1/p is the single free symbol.
struct AffineExpr {
  Rational constant;
  Rational slope;

  AffineExpr() = default;
  AffineExpr(Rational c) : constant(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  AffineExpr(long c) : constant(c) {}                  // NOLINT(google-explicit-constructor)
  AffineExpr(Rational c, Rational m) : constant(std::move(c)), slope(std::move(m)) {}

  static AffineExpr variable() { return {Rational(0), Rational(1)}; }

  Rational at(const Rational& x) const { return constant + slope * x; }
  bool is_constant() const { return slope.sign() == 0; }
  /// Root of the expression, if the slope is nonzero.
  std::optional<Rational> root() const;

  /// Renders with x spelled as given, e.g. "1 - 5/2 x".
  std::string str(std::string_view var = "x") const;
  /// Renders in terms of p, e.g. "1 - 5/(2p)".
  std::string p_str() const;

  AffineExpr operator-() const { return {-constant, -slope}; }
  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr& operator-=(const AffineExpr& o);
  AffineExpr& operator*=(const Rational& k);
  AffineExpr& operator/=(const Rational& k);

  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(AffineExpr a, const Rational& k) { return a *= k; }
  friend AffineExpr operator*(const Rational& k, AffineExpr a) { return a *= k; }
  friend AffineExpr operator/(AffineExpr a, const Rational& k) { return a /= k; }
  friend bool operator==(const AffineExpr& a, const AffineExpr& b) {
    return a.constant == b.constant && a.slope == b.slope;
  }
};

/// Sign of (lhs - rhs) on (0,1), split at the breakpoints.
struct SignPartition {
  std::vector<Rational> breakpoints;  // ascending, inside (0,1)
  std::vector<int> cell_signs;        // one per open cell, size breakpoints+1
  std::vector<int> point_signs;       // sign at each breakpoint
  bool strict = false;

  int sign_at(const Rational& x) const;
  /// True where lhs < rhs (strict) or lhs <= rhs (non-strict).
  bool holds_at(const Rational& x) const;
};

SignPartition affine_compare(const AffineExpr& lhs, const AffineExpr& rhs, bool strict);

}  // namespace anisocalc
