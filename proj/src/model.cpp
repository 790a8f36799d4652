#include "phsolve/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phsolve/errors.hpp"

namespace phsolve {

namespace {

// exp(u) overflows double near u = 709.78.
constexpr double kExpGuard = 700.0;

double safe_exp(double u, double at) {
  if (u > kExpGuard) {
    throw EvalError("function evaluation overflow: exp(" + std::to_string(u) + ") at argument " +
                    std::to_string(at));
  }
  return std::exp(u);
}

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace

FunctionSpec FunctionSpec::zero() { return FunctionSpec{}; }

FunctionSpec FunctionSpec::polynomial(std::vector<double> coeffs) {
  FunctionSpec s;
  s.kind_ = FunctionKind::polynomial;
  s.coeffs_ = std::move(coeffs);
  return s;
}

FunctionSpec FunctionSpec::morse_V(double D, double alpha) {
  if (!(D > 0.0) || !(alpha > 0.0)) throw ConfigError("morse_V requires D > 0 and alpha > 0");
  FunctionSpec s;
  s.kind_ = FunctionKind::morse_V;
  s.p1_ = D;
  s.p2_ = alpha;
  return s;
}

FunctionSpec FunctionSpec::morse_f(double D, double alpha) {
  if (!(D > 0.0) || !(alpha > 0.0)) throw ConfigError("morse_f requires D > 0 and alpha > 0");
  FunctionSpec s;
  s.kind_ = FunctionKind::morse_f;
  s.p1_ = D;
  s.p2_ = alpha;
  return s;
}

FunctionSpec FunctionSpec::gaussian_gauge(double a) {
  FunctionSpec s;
  s.kind_ = FunctionKind::gaussian_gauge;
  s.p1_ = a;
  return s;
}

FunctionSpec FunctionSpec::miao_xu_series(int n, std::vector<double> coeffs) {
  if (n < 0) throw ConfigError("miao_xu_series requires n >= 0");
  FunctionSpec s;
  s.kind_ = FunctionKind::miao_xu_series;
  s.n_ = n;
  s.coeffs_ = std::move(coeffs);
  return s;
}

FunctionSpec FunctionSpec::custom_table(std::vector<double> t, std::vector<double> f,
                                        std::vector<double> fp) {
  if (t.size() < 2 || t.size() != f.size() || t.size() != fp.size()) {
    throw ConfigError("custom_table requires matching t/f/fp arrays with >= 2 entries");
  }
  if (!std::is_sorted(t.begin(), t.end(), std::less_equal<double>())) {
    throw ConfigError("custom_table abscissae must be strictly increasing");
  }
  FunctionSpec s;
  s.kind_ = FunctionKind::custom_table;
  s.tab_t_ = std::move(t);
  s.tab_f_ = std::move(f);
  s.tab_fp_ = std::move(fp);
  return s;
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double t) {
  if (t < xs.front() || t > xs.back()) {
    throw EvalError("custom_table evaluation outside tabulated range at argument " +
                    std::to_string(t));
  }
  auto hi = std::upper_bound(xs.begin(), xs.end(), t);
  if (hi == xs.end()) --hi;
  const auto i = static_cast<size_t>(hi - xs.begin());
  const double x0 = xs[i - 1], x1 = xs[i];
  const double w = (t - x0) / (x1 - x0);
  return (1.0 - w) * ys[i - 1] + w * ys[i];
}

}  // namespace

double FunctionSpec::eval(double t) const {
  switch (kind_) {
    case FunctionKind::zero:
      return 0.0;
    case FunctionKind::polynomial:
      return horner(coeffs_, t);
    case FunctionKind::morse_V: {
      const double w = 1.0 - safe_exp(-p2_ * t, t);
      return 0.75 * p1_ * w * w;
    }
    case FunctionKind::morse_f:
      return 0.5 * std::sqrt(p1_) * (t + safe_exp(-p2_ * t, t) / p2_);
    case FunctionKind::gaussian_gauge:
      return -p1_ * t * t;
    case FunctionKind::miao_xu_series: {
      // f(t) = -t^{n+1} sum_k (c_k / (k+n+1)) t^k
      double acc = 0.0;
      for (size_t k = coeffs_.size(); k-- > 0;) {
        acc = acc * t + coeffs_[k] / static_cast<double>(k + n_ + 1);
      }
      return -std::pow(t, n_ + 1) * acc;
    }
    case FunctionKind::custom_table:
      return interp(tab_t_, tab_f_, t);
  }
  return 0.0;
}

double FunctionSpec::eval_prime(double t) const {
  switch (kind_) {
    case FunctionKind::zero:
      return 0.0;
    case FunctionKind::polynomial: {
      double acc = 0.0;
      for (size_t k = coeffs_.size(); k-- > 1;) {
        acc = acc * t + static_cast<double>(k) * coeffs_[k];
      }
      return acc;
    }
    case FunctionKind::morse_V: {
      const double e = safe_exp(-p2_ * t, t);
      return 1.5 * p1_ * p2_ * e * (1.0 - e);
    }
    case FunctionKind::morse_f:
      return 0.5 * std::sqrt(p1_) * (1.0 - safe_exp(-p2_ * t, t));
    case FunctionKind::gaussian_gauge:
      return -2.0 * p1_ * t;
    case FunctionKind::miao_xu_series:
      // f'(t) = -t^n sum_k c_k t^k
      return -std::pow(t, n_) * horner(coeffs_, t);
    case FunctionKind::custom_table:
      return interp(tab_t_, tab_fp_, t);
  }
  return 0.0;
}

void ModelDefinition::validate() const {
  if (dimension != 1 && dimension != 2) {
    throw ConfigError("model '" + name + "': dimension must be 1 or 2");
  }
  if (static_cast<int>(V.size()) != dimension || static_cast<int>(f.size()) != dimension) {
    throw ConfigError("model '" + name +
                      "': V and f must provide one separable term per dimension");
  }
}

double morse_consistency(double D, double alpha, double x_lo, double x_hi, int samples) {
  if (!(D > 0.0) || !(alpha > 0.0)) throw ConfigError("morse_consistency requires D > 0, alpha > 0");
  const auto V = FunctionSpec::morse_V(D, alpha);
  const auto f = FunctionSpec::morse_f(D, alpha);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / static_cast<double>(samples - 1);
    const double fp = f.eval_prime(x);
    const double lhs = V.eval(x) + fp * fp;
    const double w = 1.0 - std::exp(-alpha * x);
    const double rhs = D * w * w;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return worst;
}

}  // namespace phsolve
