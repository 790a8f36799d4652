#include <doctest.h>

#include <cmath>

#include "phsolve/catalog.hpp"
#include "phsolve/errors.hpp"
#include "phsolve/operators.hpp"
#include "phsolve/spectra.hpp"

using namespace phsolve;

namespace {

ModelDefinition catalog(const char* name) {
  return make_catalog_model(name, nlohmann::json::object());
}

}  // namespace

TEST_CASE("Hermitian partner assembly") {
  const Grid g = make_grid(-2.0, 8.0, 120);
  const auto m = catalog("morse");
  const auto H = build_hermitian(g, m, Scheme::central2);

  CHECK(H.hermiticity == Hermiticity::hermitian);
  CHECK((H.matrix - H.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // diagonal carries V + f'^2 = D(1 - e^{-alpha x})^2 on top of the stencil
  const double d2diag = 2.0 / (g.h * g.h);
  for (int j = 0; j < g.n; ++j) {
    const double w = 1.0 - std::exp(-g.points[j]);
    const double expected = d2diag + 36.0 * w * w;
    CHECK(H.matrix(j, j) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("free model gives the bare kinetic matrix") {
  const Grid g = make_grid(-5.0, 5.0, 80);
  const auto m = catalog("free");
  const auto H = build_hermitian(g, m, Scheme::central2);
  const auto D2 = diff_matrix(g, DiffOrder::second, Scheme::central2);
  CHECK((H.matrix + D2.matrix).cwiseAbs().maxCoeff() == 0.0);

  for (BuildMode mode : {BuildMode::continuum, BuildMode::similarity}) {
    const auto P = build_pseudo(g, m, Scheme::central2, mode);
    CHECK((P.matrix + D2.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK(P.hermiticity == Hermiticity::hermitian);
  }

  const auto s = eigen_hermitian(H, false);
  CHECK(s.eigenvalues[0].real() > 0.0);  // free particle on a box: all positive
}

TEST_CASE("three-term structure of the continuum operator") {
  const Grid g = make_grid(-4.0, 4.0, 90);
  for (const char* name : {"harmonic_gauge", "miao_xu", "morse"}) {
    const auto m = make_catalog_model(name, nlohmann::json::object());
    const Grid gg = name == std::string("morse") ? make_grid(-2.0, 8.0, 90) : g;
    const auto hh = build_hermitian(gg, m, Scheme::central2);
    const auto hp = build_pseudo(gg, m, Scheme::central2, BuildMode::continuum);

    const Eigen::MatrixXd D1 = diff_matrix(gg, DiffOrder::first, Scheme::central2).matrix;
    const Eigen::VectorXd fp = sample_derivatives(m.f[0], gg);
    Eigen::MatrixXd expected = -Eigen::MatrixXd(fp.array().square().matrix().asDiagonal());
    expected += fp.asDiagonal() * D1 + D1 * fp.asDiagonal();

    const double scale = hh.matrix.norm();
    CHECK((hp.matrix - hh.matrix - expected).norm() <= 1e-14 * scale);
  }
}

TEST_CASE("continuum harmonic-gauge operator annihilates its ground state image") {
  // H = -d^2/dx^2 - 2x d/dx - 1 acting on e^{-x^2} returns e^{-x^2}.
  auto max_err = [](int n) {
    const Grid g = make_grid(-6.0, 6.0, n);
    const auto H = build_pseudo(g, make_catalog_model("harmonic_gauge", nlohmann::json::object()),
                                Scheme::central2, BuildMode::continuum);
    Eigen::VectorXd v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = std::exp(-g.points[j] * g.points[j]);
    const Eigen::VectorXd r = H.matrix * v - v;
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) {
      if (std::abs(g.points[j]) <= 3.0) worst = std::max(worst, std::abs(r[j]));
    }
    return worst;
  };
  const double e1 = max_err(400);
  const double e2 = max_err(801);
  CHECK(e1 <= 5e-3);
  CHECK(e1 / e2 >= 3.5);  // O(h^2)
}

TEST_CASE("similarity entries are the conjugated partner entries") {
  const Grid g = make_grid(-3.0, 3.0, 60);
  const auto m = catalog("harmonic_gauge");
  const auto hp = build_pseudo(g, m, Scheme::central2, BuildMode::similarity);
  REQUIRE(hp.hermitian_partner != nullptr);
  const Eigen::MatrixXd& hh = *hp.hermitian_partner;
  const Eigen::VectorXd fv = sample_values(m.f[0], g);
  for (int j = 0; j < g.n; ++j) {
    for (int k = 0; k < g.n; ++k) {
      const double expected = hh(j, k) == 0.0 ? 0.0 : hh(j, k) * std::exp(fv[j] - fv[k]);
      CHECK(hp.matrix(j, k) == expected);
    }
  }
  CHECK(hp.mode == BuildMode::similarity);
}

TEST_CASE("similarity exponent guard trips on steep gauges") {
  const Grid g = make_grid(-8.0, 8.0, 10);  // h = 1.45, f' = 400
  ModelDefinition m;
  m.name = "steep";
  m.V = {FunctionSpec::zero()};
  m.f = {FunctionSpec::polynomial({0.0, 400.0})};
  CHECK_THROWS_AS(build_pseudo(g, m, Scheme::central2, BuildMode::similarity),
                  ConstructionError);
}

TEST_CASE("metric construction") {
  SUBCASE("trivial gauge") {
    const Grid g = make_grid(-5.0, 5.0, 50);
    const auto eta = build_metric(g, catalog("free"));
    CHECK(eta.log_condition == 0.0);
    CHECK((eta.diagonal.array() - 1.0).abs().maxCoeff() == 0.0);
  }

  SUBCASE("harmonic gauge on [-4,4]") {
    const Grid g = make_grid(-4.0, 4.0, 399);
    const auto eta = build_metric(g, catalog("harmonic_gauge"));
    for (int j = 0; j < g.n; ++j) {
      CHECK(eta.diagonal[j] ==
            doctest::Approx(std::exp(-g.points[j] * g.points[j])).epsilon(1e-13));
      CHECK(eta.diagonal[j] > 0.0);
    }
    CHECK(eta.log_condition == doctest::Approx(16.0).epsilon(0.02));
  }

  SUBCASE("morse metric increases for x > 0") {
    const Grid g = make_grid(-2.0, 8.0, 200);
    const auto eta = build_metric(g, catalog("morse"));
    for (int j = 1; j < g.n; ++j) {
      if (g.points[j - 1] > 0.0) CHECK(eta.diagonal[j] > eta.diagonal[j - 1]);
    }
  }

  SUBCASE("overflow guard advises a domain shrink") {
    const Grid g = make_grid(-30.0, 30.0, 100);
    CHECK_THROWS_AS(build_metric(g, catalog("harmonic_gauge")), ConstructionError);
    try {
      build_metric(g, catalog("harmonic_gauge"));
    } catch (const ConstructionError& e) {
      CHECK(std::string(e.what()).find("shrink") != std::string::npos);
    }
  }
}

TEST_CASE("momentum dual") {
  const auto m = catalog("harmonic_dual_p");

  SUBCASE("harmonic gauge is self-dual") {
    const Grid gp = make_grid(-8.0, 8.0, 700);
    const auto [hermitian, dual] = build_momentum_dual(gp, m, Scheme::central2);
    const auto s = eigen_hermitian(hermitian, false);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(s.eigenvalues[k].real() - (2.0 * k + 1.0)) / (2.0 * k + 1.0) <= 1e-3);
    }
    const auto sd = eigen_general(dual, false);
    const auto match = match_spectra(sd, s, 3, 1e-2, 1e-6);
    CHECK(match.passed);
  }

  SUBCASE("zero gauge collapses the dual onto the partner") {
    ModelDefinition trivial;
    trivial.name = "trivial_dual";
    trivial.representation = Representation::momentum;
    trivial.V = {FunctionSpec::polynomial({0.0, 0.0, 1.0})};  // V(p) = p^2
    trivial.f = {FunctionSpec::zero()};
    const Grid gp = make_grid(-6.0, 6.0, 80);
    const auto [hermitian, dual] = build_momentum_dual(gp, trivial, Scheme::central2);
    CHECK((hermitian.matrix - dual.matrix).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("quartic momentum potential, self-consistent spectrum") {
    // V(p) = p^4 with g = -p^2/2: partner is x^2 + p^4 + p^2.
    ModelDefinition quartic;
    quartic.name = "quartic_dual";
    quartic.representation = Representation::momentum;
    quartic.V = {FunctionSpec::polynomial({0.0, 0.0, 0.0, 0.0, 1.0})};
    quartic.f = {FunctionSpec::gaussian_gauge(0.5)};
    const Grid gp = make_grid(-6.0, 6.0, 700);
    const auto [hermitian, dual] = build_momentum_dual(gp, quartic, Scheme::central2);
    const auto sh = eigen_hermitian(hermitian, false);
    for (int k = 0; k < 4; ++k) CHECK(sh.eigenvalues[k].imag() == 0.0);
    const auto sd = eigen_general(dual, false);
    const auto match = match_spectra(sd, sh, 3, 1e-2, 1e-6);
    CHECK(match.passed);
  }

  SUBCASE("representation validation") {
    const Grid gp = make_grid(-6.0, 6.0, 64);
    CHECK_THROWS_AS(build_momentum_dual(gp, catalog("harmonic_gauge"), Scheme::central2),
                    ConfigError);
  }
}

TEST_CASE("2D Kronecker-sum construction") {
  const auto m2 = catalog("harmonic_2d");

  SUBCASE("isotropic harmonic levels") {
    const Grid gx = make_grid(-5.0, 5.0, 24), gy = make_grid(-5.0, 5.0, 24);
    const auto [hh, hp] = build_2d(gx, gy, m2, Scheme::central2, BuildMode::continuum);
    const auto s = eigen_hermitian(hh, false);
    const double expected[6] = {2.0, 4.0, 4.0, 6.0, 6.0, 6.0};
    for (int k = 0; k < 6; ++k) {
      CHECK(std::abs(s.eigenvalues[k].real() - expected[k]) <= 0.15);
    }
  }

  SUBCASE("zero gauge collapses H onto H_H") {
    ModelDefinition flat;
    flat.name = "flat2d";
    flat.dimension = 2;
    flat.V = {FunctionSpec::polynomial({0.0, 0.0, 1.0}), FunctionSpec::zero()};
    flat.f = {FunctionSpec::zero(), FunctionSpec::zero()};
    const Grid g = make_grid(-4.0, 4.0, 16);
    const auto [hh, hp] = build_2d(g, g, flat, Scheme::central2, BuildMode::continuum);
    CHECK((hh.matrix - hp.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK(hp.hermiticity == Hermiticity::hermitian);
  }

  SUBCASE("separable spectrum is the sum of axis spectra") {
    // Morse on x, harmonic gauge on y.
    ModelDefinition mix;
    mix.name = "morse_x_harmonic";
    mix.dimension = 2;
    mix.V = {FunctionSpec::morse_V(36.0, 1.0), FunctionSpec::zero()};
    mix.f = {FunctionSpec::morse_f(36.0, 1.0), FunctionSpec::gaussian_gauge(0.5)};
    const Grid gx = make_grid(-2.0, 9.0, 60), gy = make_grid(-6.0, 6.0, 40);
    const auto [hh2, hp2] = build_2d(gx, gy, mix, Scheme::central2, BuildMode::continuum);

    ModelDefinition ax = mix, ay = mix;
    ax.dimension = ay.dimension = 1;
    ax.V = {mix.V[0]};
    ax.f = {mix.f[0]};
    ay.V = {mix.V[1]};
    ay.f = {mix.f[1]};
    const auto sx = eigen_hermitian(build_hermitian(gx, ax, Scheme::central2), false);
    const auto sy = eigen_hermitian(build_hermitian(gy, ay, Scheme::central2), false);

    std::vector<double> sums;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        sums.push_back(sx.eigenvalues[i].real() + sy.eigenvalues[j].real());
      }
    }
    std::sort(sums.begin(), sums.end());

    const auto s2 = eigen_hermitian(hh2, false);
    for (int k = 0; k < 6; ++k) {
      CHECK(std::abs(s2.eigenvalues[k].real() - sums[k]) <=
            1e-7 * std::max(1.0, std::abs(sums[k])));
    }
  }

  SUBCASE("similarity mode in 2D stores the partner") {
    const Grid g = make_grid(-3.0, 3.0, 12);
    const auto [hh, hp] = build_2d(g, g, m2, Scheme::central2, BuildMode::similarity);
    REQUIRE(hp.hermitian_partner != nullptr);
    CHECK((*hp.hermitian_partner - hh.matrix).cwiseAbs().maxCoeff() == 0.0);
    const auto eta = build_metric_2d(g, g, m2);
    CHECK(eta.diagonal.size() == g.n * g.n);
    CHECK(eta.log_condition > 0.0);
  }

  SUBCASE("dimension validation") {
    const Grid g = make_grid(-3.0, 3.0, 12);
    CHECK_THROWS_AS(build_2d(g, g, catalog("harmonic_gauge"), Scheme::central2,
                             BuildMode::continuum),
                    ConfigError);
    CHECK_THROWS_AS(build_hermitian(g, m2, Scheme::central2), ConfigError);
  }
}

TEST_CASE("construction error names the offending point") {
  // Morse V overflows at strongly negative coordinates.
  const Grid g = make_grid(-900.0, 10.0, 100);
  CHECK_THROWS_AS(build_hermitian(g, catalog("morse"), Scheme::central2), ConstructionError);
}
