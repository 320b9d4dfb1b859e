#include <cmath>
#include <numeric>

#include <doctest.h>

#include "qlmass/legendre_series.hpp"
#include "qlmass/quadrature_grid.hpp"
#include "qlmass/spectral.hpp"

using namespace qlmass;

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  for (int n : {4, 16, 64}) {
    const GaussLegendreRule r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    CHECK(std::is_sorted(r.nodes.rbegin(), r.nodes.rend()));
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(s - exact) <= 1e-13);
    }
  }
}

TEST_CASE("grid weights sum to the sphere area") {
  for (int n : {8, 33, 64}) {
    const QuadratureGrid g(n, 4);
    const std::vector<double> ones(g.size(), 1.0);
    CHECK(std::abs(g.integrate_round(ones) - 4 * M_PI) <= 1e-13);
    std::vector<double> w3(g.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 4; ++j) w3[g.index(i, j)] = g.cos_theta(i);
    CHECK(std::abs(g.integrate_round(w3)) <= 1e-13);
  }
  const QuadratureGrid g(16, 4);
  CHECK(g.cos_theta(0) > g.cos_theta(15));
  CHECK(g.theta(0) == doctest::Approx(std::acos(g.cos_theta(0))));
  CHECK(g.weight_phi() == doctest::Approx(M_PI / 2));
}

TEST_CASE("chebyshev nodes") {
  const auto x = chebyshev_nodes(5);
  REQUIRE(x.size() == 5);
  CHECK(x[0] == doctest::Approx(std::cos(M_PI / 10)));
  CHECK(std::abs(x[2]) <= 1e-15);
}

TEST_CASE("barycentric interpolation and differentiation are spectral") {
  const BarycentricInterpolant I(chebyshev_nodes(24));
  std::vector<double> f;
  for (double x : I.nodes()) f.push_back(std::exp(x) * std::sin(2 * x));
  const double xe = 0.3217;
  CHECK(I.evaluate(f, xe) == doctest::Approx(std::exp(xe) * std::sin(2 * xe)).epsilon(1e-13));
  const auto df = I.differentiate(f);
  double worst = 0.0;
  for (int i = 0; i < I.size(); ++i) {
    const double x = I.nodes()[i];
    worst = std::max(worst, std::abs(df[i] - std::exp(x) * (std::sin(2 * x) + 2 * std::cos(2 * x))));
  }
  CHECK(worst <= 1e-11);
  // Rows of the differentiation matrix annihilate constants.
  CHECK(I.differentiation_matrix().rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("legendre series") {
  const LegendreSeries p2({0.0, 0.0, 1.0});
  const double th = 0.9, x = std::cos(th);
  CHECK(p2.value(th) == doctest::Approx(0.5 * (3 * x * x - 1)));
  CHECK(p2.d_theta(th) == doctest::Approx(-3 * x * std::sin(th)));
  CHECK(p2.laplacian(th) == doctest::Approx(-6 * p2.value(th)));
  // d2/dtheta2 of P2 = -3 cos(2 theta) by direct differentiation.
  CHECK(p2.d2_theta(th) == doctest::Approx(-3 * std::cos(2 * th)));
  CHECK(LegendreSeries().is_zero());
  CHECK_FALSE(p2.is_zero());
  CHECK(LegendreSeries({1.0, -2.0}).sup_bound() == 3.0);
  CHECK(p2.scaled(2.0).value(th) == doctest::Approx(2 * p2.value(th)));
}
