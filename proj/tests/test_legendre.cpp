#include <doctest.h>

#include <cmath>
#include <random>

#include "conecert/legendre.hpp"

using namespace conecert;

TEST_CASE("listed low-degree polynomials") {
  const LegendreBasis basis(4);
  for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const Vec v = basis.values(t);
    CHECK(v(0) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
    CHECK(v(1) == doctest::Approx(std::sqrt(6.0) / 2.0 * t).epsilon(1e-14));
    CHECK(v(2) == doctest::Approx(std::sqrt(10.0) / 4.0 * (3 * t * t - 1)).epsilon(1e-14));
    CHECK(v(3) == doctest::Approx(std::sqrt(14.0) / 4.0 * (5 * t * t * t - 3 * t)).epsilon(1e-14));
    CHECK(v(4) == doctest::Approx(3.0 * std::sqrt(2.0) / 16.0 * (35 * std::pow(t, 4) - 30 * t * t + 3)).epsilon(1e-14));
  }
  CHECK(basis.values(0.0)(2) == doctest::Approx(-std::sqrt(10.0) / 4.0).epsilon(1e-15));
  CHECK(basis.values(1.0)(4) == doctest::Approx(3.0 * std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(basis.normalization(3) == doctest::Approx(std::sqrt(3.5)));
}

TEST_CASE("orthonormality under an exact Gauss rule") {
  const int n = 12;
  const LegendreBasis basis(n);
  const GaussRule g = gauss_legendre(n + 1);
  Mat gram = Mat::Zero(n + 1, n + 1);
  for (Index i = 0; i < g.nodes.size(); ++i) {
    const Vec v = basis.values(g.nodes(i));
    gram += g.weights(i) * v * v.transpose();
  }
  CHECK((gram - Mat::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("gauss rules integrate monomials") {
  const GaussRule g = gauss_legendre(5);
  CHECK(g.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  for (int k = 0; k <= 9; ++k) {
    double s = 0.0;
    for (Index i = 0; i < g.nodes.size(); ++i) s += g.weights(i) * std::pow(g.nodes(i), k);
    const double expect = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(s - expect) <= 1e-14);
  }
}

TEST_CASE("derivative matrix examples") {
  CHECK((derivative_matrix(4, 0) - Mat::Identity(5, 5)).norm() == 0.0);
  const Mat d1 = derivative_matrix(3, 1);
  CHECK((d1 * Vec::Unit(4, 1) - std::sqrt(3.0) * Vec::Unit(4, 0)).norm() < 1e-14);
  CHECK((d1 * Vec::Unit(4, 0)).norm() == 0.0);
  const Mat d2 = derivative_matrix(3, 2);
  // p_2'' = 3 sqrt(10) / 2 = (3 sqrt(5)) p_0.
  CHECK((d2 * Vec::Unit(4, 2) - 3.0 * std::sqrt(5.0) * Vec::Unit(4, 0)).norm() < 1e-13);
  CHECK(derivative_matrix(3, 3).row(3).norm() == 0.0);
}

TEST_CASE("basis derivatives agree with finite differences and with D_r") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-0.95, 0.95);
  const int n = 8;
  const LegendreBasis basis(n);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = unit(rng);
    const double h = 1e-5;
    for (int r = 1; r <= 3; ++r) {
      const Vec fd = (basis.derivatives(t + h, r - 1) - basis.derivatives(t - h, r - 1)) / (2 * h);
      CHECK((fd - basis.derivatives(t, r)).cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + basis.derivatives(t, r).cwiseAbs().maxCoeff()));
      const Mat d = derivative_matrix(n, r);
      // p^(r)(t) for each basis element: values(t)^T D_r e_k.
      const Vec via_matrix = d.transpose() * basis.values(t);
      CHECK((via_matrix - basis.derivatives(t, r)).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + via_matrix.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("derivatives of order above n vanish") {
  const LegendreBasis basis(2);
  CHECK(basis.derivatives(0.3, 3).norm() == 0.0);
  CHECK(basis.derivatives(0.3, 0) == basis.values(0.3));
}
