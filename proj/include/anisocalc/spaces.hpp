#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anisocalc/ratcore.hpp"

namespace anisocalc {

enum class Scale { B, H, W, L, C0 };

const char* to_string(Scale scale);

/// Splitting R^n = R^{n_1} x ... x R^{n_nu} with integer weights omega_k.
struct Anisotropy {
  std::vector<int> dims;
  std::vector<int> weights;

  static Anisotropy make(std::vector<int> dims, std::vector<int> weights);
  static Anisotropy isotropic(int n);

  int nu() const { return static_cast<int>(dims.size()); }
  long omega_dot() const;    // lcm of the weights
  long omega_dot_n() const;  // sum of omega_k n_k
  /// omega = omega_dot * (1,...,1)
  bool uniform() const;

  friend bool operator==(const Anisotropy&, const Anisotropy&) = default;
};

/// Banach space E of values, with the properties the theorems ask about.
struct TargetSpace {
  std::string name = "R";
  bool umd = true;
  bool prop_alpha = true;
  bool banach_algebra = true;
  bool unital = true;

  static TargetSpace scalar() { return {}; }
  static TargetSpace lebesgue(std::string name = "Lp") { return {std::move(name), true, true, false, false}; }

  friend bool operator==(const TargetSpace&, const TargetSpace&) = default;
};

/// A function space on a product domain. `x` is 1/p and `y` is 1/q; an
/// absent `y` on the Besov scale means q = p.
struct SpaceDescr {
  Scale scale = Scale::H;
  AffineExpr s;
  AffineExpr x;
  std::optional<Rational> y;
  Anisotropy aniso = Anisotropy::isotropic(1);
  TargetSpace target;
  std::string domain = "R";

  bool symbolic() const { return !s.is_constant() || !x.is_constant(); }
  SpaceDescr at(const Rational& x_value) const;
  /// Throws Unsupported on symbolic descriptors.
  Rational s_value() const;
  Rational x_value() const;
  Rational y_value() const;  // 1/q, defaulting to 1/p

  void validate() const;

  friend bool operator==(const SpaceDescr&, const SpaceDescr&) = default;
};

/// Rendered in query syntax, e.g. "W^{1-1/p,(2,1)}_p(JxSigma)".
std::string to_string(const SpaceDescr& space);

/// Index for B, H and W; the omega-index for L. Throws Unsupported for C0.
AffineExpr sobolev_index(const SpaceDescr& space);

/// Rewrites W into H, B or L, canonicalizes q = p on the Besov scale and
/// checks the target properties the identification needs.
SpaceDescr normalize(const SpaceDescr& space);

/// True when s lies in omega_dot * N_0.
bool in_omega_dot_lattice(const Rational& s, const Anisotropy& aniso);

/// One factor X^{s/omega_k}(R^{n_k}, L_p(rest; E)) of an intersection.
struct SliceSpace {
  int k = 1;  // 1-based slice position
  SpaceDescr space;

  friend bool operator==(const SliceSpace&, const SliceSpace&) = default;
};

/// Folds the slices into one anisotropic space. Without explicit weights,
/// the smallest integer weights making s_k * omega_k constant are used.
SpaceDescr recognize_intersection(const std::vector<SliceSpace>& slices,
                                  const std::optional<std::vector<int>>& weights = std::nullopt,
                                  const std::string& domain = {});
std::vector<SliceSpace> expand_intersection(const SpaceDescr& space,
                                            const std::vector<std::string>& slice_domains = {});

/// Multilinear map E_1 x ... x E_m -> E.
struct MultSignature {
  std::vector<std::string> factors;
  std::string result;

  friend auto operator<=>(const MultSignature&, const MultSignature&) = default;
};

/// Registered products. Besides explicit entries, two families are
/// admitted: products inside one Banach algebra, and the action of scalars
/// on any space (all factors scalar except at most one equal to the result).
class SignatureRegistry {
 public:
  void add(MultSignature sig) { explicit_.insert(std::move(sig)); }
  bool admits(const std::vector<TargetSpace>& factors, const TargetSpace& result) const;

  static const SignatureRegistry& defaults();

 private:
  std::set<MultSignature> explicit_;
};

}  // namespace anisocalc
