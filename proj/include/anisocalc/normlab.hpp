#pragma once

#include <functional>
#include <string>
#include <vector>

#include "anisocalc/multiply.hpp"
#include "anisocalc/spaces.hpp"

namespace anisocalc {

using Evaluator = std::function<double(const std::vector<double>&)>;

/// Tensor grid over R^{n_1} x ... x R^{n_nu}; every coordinate of slice k
/// runs over [-half_width_k, half_width_k] with step spacing_k.
struct GridSpec {
  Anisotropy aniso = Anisotropy::isotropic(1);
  std::vector<double> spacing;
  std::vector<double> half_width;
  double decay_radius = 1.0;  // the sampled function is negligible beyond it

  int total_dims() const;
  std::vector<int> points_per_coordinate() const;
  /// Grid with the given spacing and a half width of 5 decay radii.
  static GridSpec around(const Anisotropy& aniso, double spacing, double decay_radius);
};

/// Samples of a function on a GridSpec. `eval` gives off-grid values;
/// without it, values between nodes are multilinear interpolants.
struct GridFunction {
  GridSpec grid;
  std::vector<double> samples;
  Evaluator eval;

  static GridFunction sample(const GridSpec& grid, Evaluator f);
  double value_at(const std::vector<double>& point) const;
  /// Pointwise product.
  GridFunction times(const GridFunction& other) const;
};

struct TestFunction {
  std::string name;
  Evaluator eval;
};

/// exp(-sum_k |x_k - c_k|^2 / w^2)
TestFunction gaussian(int dims, double width = 1.0, std::vector<double> center = {});
/// cos(freq * x_1) * exp(-|x|^2 / w^2)
TestFunction modulated_gaussian(int dims, double freq, double width = 1.0);
/// u(lambda^{omega_k} x_k) for every slice k.
TestFunction dilate(const TestFunction& f, const Anisotropy& aniso, double lambda);

struct IntegrandSample {
  int slice;           // 1-based
  std::string alpha;   // derivative multi-index
  double h;
  double value;        // integrand per unit of log h
};

struct SeminormResult {
  double value = 0;
  double truncation_error_estimate = 0;
  std::vector<IntegrandSample> samples;
};

/// Difference-quotient seminorm of a W^{s,omega}_p space with s/omega_k not
/// an integer for every k.
SeminormResult seminorm_slobodeckij(const GridFunction& u, const SpaceDescr& space);
/// Seminorm through iterated differences of order [s/omega_k] + 1.
SeminormResult seminorm_besov(const GridFunction& u, const SpaceDescr& space);

double lp_norm(const GridFunction& u, double p);
/// Full norm for L, H with s in omega_dot N_0, and W or B_{p,p} with
/// non-integer s/omega_k. Throws Unsupported otherwise.
double full_norm(const GridFunction& u, const SpaceDescr& space);

struct ProductEstimate {
  std::vector<double> ratios;  // ||u_1...u_m|| / prod ||u_j||
  double max_ratio = 0;
  double min_ratio = 0;
  double spread() const { return min_ratio > 0 ? max_ratio / min_ratio : 0; }
};

/// Ratio statistics over a family of factor tuples. Refuses instances that
/// the decision procedure does not cover.
ProductEstimate check_product_estimate(const MultInstance& inst,
                                       const std::vector<std::vector<GridFunction>>& family);

/// Least-squares slope of log(seminorm) against log(lambda).
double fit_scaling_exponent(const std::vector<double>& lambdas, const std::vector<double>& values);

std::string to_csv(const SeminormResult& r);

}  // namespace anisocalc
