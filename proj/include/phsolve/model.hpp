#pragma once

#include <optional>
#include <string>
#include <vector>

namespace phsolve {

enum class Representation { coordinate, momentum };

enum class FunctionKind {
  zero,
  polynomial,
  morse_V,
  morse_f,
  gaussian_gauge,
  miao_xu_series,
  custom_table,
};

/// Catalog-or-series definition of a real function of one variable together
/// with its exact first derivative. Derivatives are always analytic; finite
/// differences are never used to obtain them, so downstream identity checks
/// see discretization error from the differentiation matrices only.
///
/// Kinds:
///   zero            f(t) = 0
///   polynomial      f(t) = sum_k coeffs[k] t^k
///   morse_V         V(t) = (3D/4)(1 - e^{-alpha t})^2
///   morse_f         f(t) = (sqrt(D)/2)(t + e^{-alpha t}/alpha)
///   gaussian_gauge  f(t) = -a t^2
///   miao_xu_series  f(t) = -sum_k c_k t^{k+n+1}/(k+n+1)  (truncated at K = coeffs.size()-1)
///   custom_table    tabulated (t, f, f') with linear interpolation; excluded
///                   from machine-precision derivative checks
class FunctionSpec {
 public:
  static FunctionSpec zero();
  static FunctionSpec polynomial(std::vector<double> coeffs);
  static FunctionSpec morse_V(double D, double alpha);
  static FunctionSpec morse_f(double D, double alpha);
  static FunctionSpec gaussian_gauge(double a);
  static FunctionSpec miao_xu_series(int n, std::vector<double> coeffs);
  static FunctionSpec custom_table(std::vector<double> t, std::vector<double> f,
                                   std::vector<double> fp);

  double eval(double t) const;
  double eval_prime(double t) const;

  FunctionKind kind() const { return kind_; }
  /// False for custom_table (linear interpolation), true otherwise.
  bool machine_exact() const { return kind_ != FunctionKind::custom_table; }

  const std::vector<double>& coeffs() const { return coeffs_; }
  double param_D() const { return p1_; }
  double param_alpha() const { return p2_; }
  double param_a() const { return p1_; }
  int param_n() const { return n_; }

 private:
  FunctionSpec() = default;

  FunctionKind kind_ = FunctionKind::zero;
  double p1_ = 0.0;  // D or a
  double p2_ = 0.0;  // alpha
  int n_ = 0;        // miao_xu exponent offset
  std::vector<double> coeffs_;
  // custom_table storage
  std::vector<double> tab_t_, tab_f_, tab_fp_;
};

/// A catalog model: V and f (per axis for dimension 2, additively separable),
/// sharing one representation. In momentum representation the grid variable
/// is p, "V" is V(p) and "f" plays the role of the gauge g(p).
struct ModelDefinition {
  std::string name;
  int dimension = 1;  // 1 or 2
  Representation representation = Representation::coordinate;
  std::vector<FunctionSpec> V;  // size == dimension
  std::vector<FunctionSpec> f;  // size == dimension
  std::optional<std::string> analytic_spectrum;  // oracle id, e.g. "harmonic"
  double oscillator_scale = 0.0;  // omega for the harmonic oracles
  bool numerov_tail = false;  // resolve eigenfunction tails by inward integration

  void validate() const;
};

/// Checks V(x) + f'(x)^2 == D(1 - e^{-alpha x})^2 on a sample set and returns
/// the maximum deviation, normalized per point by max(1, |rhs|). Deviations
/// are reported, never thrown.
double morse_consistency(double D, double alpha, double x_lo = -2.0, double x_hi = 8.0,
                         int samples = 101);

}  // namespace phsolve
