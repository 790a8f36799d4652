#include <doctest.h>

#include <cmath>
#include <random>

#include "phsolve/errors.hpp"
#include "phsolve/model.hpp"

using namespace phsolve;

TEST_CASE("catalog function values") {
  CHECK(FunctionSpec::morse_V(36.0, 1.0).eval(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(FunctionSpec::miao_xu_series(1, {1.0}).eval(2.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(FunctionSpec::morse_f(36.0, 1.0).eval(0.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(FunctionSpec::zero().eval(4.7) == 0.0);
  CHECK(FunctionSpec::polynomial({1.0, 2.0, 3.0}).eval(2.0) == doctest::Approx(17.0));
}

TEST_CASE("catalog derivative values") {
  const auto mf = FunctionSpec::morse_f(36.0, 1.0);
  CHECK(mf.eval_prime(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  for (double t : {-1.0, 0.5, 2.0}) {
    CHECK(mf.eval_prime(t) == doctest::Approx(3.0 * (1.0 - std::exp(-t))).epsilon(1e-14));
  }
  CHECK(FunctionSpec::gaussian_gauge(0.5).eval_prime(1.0) == doctest::Approx(-1.0));
  CHECK(FunctionSpec::miao_xu_series(1, {1.0}).eval_prime(3.0) == doctest::Approx(-3.0));
  CHECK(FunctionSpec::polynomial({1.0, 2.0, 3.0}).eval_prime(2.0) == doctest::Approx(14.0));
}

TEST_CASE("empty Miao-Xu series is identically zero") {
  const auto f = FunctionSpec::miao_xu_series(3, {0.0, 0.0, 0.0});
  for (double t : {-2.0, 0.0, 1.5, 4.0}) {
    CHECK(f.eval(t) == 0.0);
    CHECK(f.eval_prime(t) == 0.0);
  }
}

TEST_CASE("analytic derivatives agree with central differences at order 2") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);

  std::vector<FunctionSpec> specs = {
      FunctionSpec::polynomial({0.3, -1.2, 0.5, 0.7, -0.1}),
      FunctionSpec::morse_V(12.0, 0.8),
      FunctionSpec::morse_f(12.0, 0.8),
      FunctionSpec::gaussian_gauge(0.7),
      FunctionSpec::miao_xu_series(1, {0.4, -0.3, 0.2}),
  };
  const double steps[3] = {1e-2, 5e-3, 2.5e-3};

  for (const auto& spec : specs) {
    for (int trial = 0; trial < 5; ++trial) {
      const double t = unif(rng);
      double err[3];
      for (int i = 0; i < 3; ++i) {
        const double h = steps[i];
        const double fd = (spec.eval(t + h) - spec.eval(t - h)) / (2.0 * h);
        err[i] = std::abs(fd - spec.eval_prime(t));
      }
      if (err[0] < 1e-12) continue;  // central difference exact (low-degree polynomial)
      const double order1 = std::log(err[0] / err[1]) / std::log(steps[0] / steps[1]);
      const double order2 = std::log(err[1] / err[2]) / std::log(steps[1] / steps[2]);
      CHECK(order1 >= 1.9);
      CHECK(order2 >= 1.9);
    }
  }
}

TEST_CASE("morse consistency identity") {
  CHECK(morse_consistency(36.0, 1.0) <= 1e-12);
  CHECK(morse_consistency(1.0, 2.0) <= 1e-12);
  for (double D : {0.5, 36.0, 1e4}) {
    for (double alpha : {0.1, 1.0, 10.0}) {
      CHECK(morse_consistency(D, alpha) <= 1e-12);
    }
  }
}

TEST_CASE("morse consistency negative control") {
  // Mismatched D between V and f': the identity breaks, deviation is reported.
  const auto V = FunctionSpec::morse_V(36.0, 1.0);
  const auto f_wrong = FunctionSpec::morse_f(30.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = -2.0 + 0.1 * i;
    const double fp = f_wrong.eval_prime(x);
    const double w = 1.0 - std::exp(-x);
    const double lhs = V.eval(x) + fp * fp;
    const double rhs = 36.0 * w * w;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("custom_table interpolates linearly and rejects out-of-range input") {
  const auto t = FunctionSpec::custom_table({0.0, 1.0, 2.0}, {0.0, 2.0, 3.0}, {2.0, 1.5, 0.5});
  CHECK(t.eval(1.0) == doctest::Approx(2.0));
  CHECK(t.eval(0.5) == doctest::Approx(1.0));
  CHECK(t.eval_prime(1.5) == doctest::Approx(1.0));
  CHECK(!t.machine_exact());
  CHECK_THROWS_AS(t.eval(2.5), EvalError);
  CHECK_THROWS_AS(t.eval(-0.1), EvalError);
}

TEST_CASE("evaluation overflow guard names the argument") {
  const auto V = FunctionSpec::morse_V(36.0, 1.0);
  CHECK_THROWS_AS(V.eval(-800.0), EvalError);
  try {
    V.eval(-800.0);
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("-800") != std::string::npos);
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(FunctionSpec::morse_V(-1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(FunctionSpec::morse_f(36.0, 0.0), ConfigError);
  CHECK_THROWS_AS(FunctionSpec::miao_xu_series(-1, {1.0}), ConfigError);
  CHECK_THROWS_AS(FunctionSpec::custom_table({1.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(FunctionSpec::custom_table({1.0}, {0.0}, {0.0}), ConfigError);

  ModelDefinition bad;
  bad.name = "bad";
  bad.dimension = 2;
  bad.V = {FunctionSpec::zero()};
  bad.f = {FunctionSpec::zero()};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
