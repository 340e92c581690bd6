#include <doctest.h>

#include <cmath>
#include <random>

#include "conecert/legendre.hpp"
#include "conecert/shape.hpp"
#include "oracles.hpp"

using namespace conecert;

namespace {

LegendrePoly random_poly(std::mt19937_64& rng, int n) {
  return LegendrePoly{oracle::random_vector(rng, n + 1)};
}

double factorial(int r) { return r <= 1 ? 1.0 : r * factorial(r - 1); }

}  // namespace

TEST_CASE("monomial conversion and evaluation") {
  const LegendrePoly p = from_monomials({1.0, 0.0, 1.0}, 3);  // t^2 + 1
  CHECK(p.degree_bound() == 3);
  for (double t : {-1.0, -0.2, 0.5, 1.0}) {
    CHECK(eval_poly(p, t) == doctest::Approx(t * t + 1.0).epsilon(1e-14));
    CHECK(eval_poly(p, t, 1) == doctest::Approx(2 * t).epsilon(1e-13).scale(1.0));
    CHECK(eval_poly(p, t, 2) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(eval_poly(p, t, 4) == 0.0);
  }
  CHECK_THROWS_AS(from_monomials({0.0, 0.0, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("eval_poly on basis coordinates") {
  CHECK(eval_poly(LegendrePoly{Vec::Unit(3, 0)}, 0.4) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(eval_poly(LegendrePoly{Vec::Unit(3, 2)}, -0.8, 2) == doctest::Approx(3.0 * std::sqrt(10.0) / 2.0).epsilon(1e-14));
  CHECK(eval_poly(LegendrePoly{Vec::Unit(3, 2)}, 0.1, 3) == 0.0);
}

TEST_CASE("project_function reproduces polynomials and Parseval holds") {
  const LegendrePoly p = project_function([](double t) { return 3 * t * t * t - t + 2; }, 5);
  CHECK((p.coeffs - from_monomials({2.0, -1.0, 0.0, 3.0}, 5).coeffs).norm() < 1e-13);
  // |p|^2 by Gauss quadrature equals the coefficient sum of squares.
  const GaussRule g = gauss_legendre(8);
  double sq = 0.0;
  for (Index i = 0; i < g.nodes.size(); ++i) sq += g.weights(i) * std::pow(eval_poly(p, g.nodes(i)), 2);
  CHECK(sq == doctest::Approx(p.norm() * p.norm()).epsilon(1e-13));
}

TEST_CASE("representer examples") {
  const LegendrePoly k0 = representer(1, 0, 0.0);
  CHECK(k0.coeffs(0) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(std::abs(k0.coeffs(1)) < 1e-15);
  for (double a : {-1.0, 0.0, 0.6}) {
    const LegendrePoly k1 = representer(1, 1, a);
    CHECK(std::abs(k1.coeffs(0)) < 1e-15);
    CHECK(k1.coeffs(1) == doctest::Approx(std::sqrt(6.0) / 2.0));
  }
  CHECK_THROWS_AS(representer(2, 0, 1.5), std::invalid_argument);
}

TEST_CASE("representers reproduce the derivative functional") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const int r = trial % n;
    const double a = unit(rng);
    const LegendrePoly p = random_poly(rng, n);
    const double inner = representer(n, r, a).coeffs.dot(p.coeffs);
    CHECK(std::abs(inner - eval_poly(p, a, r)) <= 1e-9 * (1.0 + std::abs(inner)));
  }
}

TEST_CASE("t^r pairs with every representer to r!") {
  for (int n = 1; n <= 8; ++n) {
    for (int r = 0; r <= std::min(3, n); ++r) {
      std::vector<double> mono(static_cast<std::size_t>(r + 1), 0.0);
      mono.back() = 1.0;
      const LegendrePoly e = from_monomials(mono, n);
      for (double a : chebyshev_grid(50)) {
        const double v = e.coeffs.dot(representer(n, r, a).coeffs);
        CHECK(std::abs(v - factorial(r)) <= 1e-8 * factorial(r));
      }
    }
  }
}

TEST_CASE("chebyshev grids nest") {
  const auto coarse = chebyshev_grid(9);
  const auto fine = chebyshev_grid(17);
  for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(fine[2 * i] == coarse[i]);
  CHECK(default_shape_grid(3).size() == 80);
}

TEST_CASE("problem validation") {
  ShapeProblem p{2, 3, chebyshev_grid(10), LegendrePoly{Vec::Zero(3)}};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.r = 2;
  CHECK_NOTHROW(p.validate());
  p.r = 0;
  CHECK_NOTHROW(p.validate());
  p.grid = {0.5, -0.5, 0.0};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.grid = {-1.0, 0.0};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.grid = chebyshev_grid(10);
  p.target = LegendrePoly{Vec::Zero(2)};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("feasible target is returned unchanged") {
  const ShapeProblem p{3, 0, default_shape_grid(3), from_monomials({1.0, 0.0, 1.0}, 3)};
  const ShapeResult res = project_shape(p);
  CHECK((res.solution.coeffs - p.target.coeffs).norm() < 1e-12);
  CHECK(res.rho.empty());
  CHECK(res.active_alphas.empty());
  CHECK(res.distance < 1e-12);
}

TEST_CASE("linear target under nonnegativity") {
  const ShapeProblem p{1, 0, default_shape_grid(1), from_monomials({0.0, 1.0}, 1)};
  const ShapeResult res = project_shape(p);
  // (t + 1) / 4
  const LegendrePoly expect = from_monomials({0.25, 0.25}, 1);
  CHECK((res.solution.coeffs - expect.coeffs).norm() <= 1e-6);
  REQUIRE(res.active_alphas.size() == 1);
  CHECK(res.active_alphas[0] == doctest::Approx(-1.0));
  CHECK(res.bound_ok);
}

TEST_CASE("decreasing target under monotonicity collapses to zero") {
  const ShapeProblem p{1, 1, default_shape_grid(1), from_monomials({0.0, -1.0}, 1)};
  const ShapeResult res = project_shape(p);
  CHECK(res.solution.coeffs.norm() <= 1e-9);
  CHECK_FALSE(res.bound_applicable);
}

TEST_CASE("grid problem matches the enumeration oracle") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const int r = trial % n;
    const int size = n + 1 + static_cast<int>(rng() % static_cast<unsigned>(8 - n));
    ShapeProblem p{n, r, chebyshev_grid(size), random_poly(rng, n)};
    p.refine = false;
    const ShapeResult res = project_shape(p);
    Mat k(n + 1, size);
    for (int j = 0; j < size; ++j) k.col(j) = representer(n, r, p.grid[static_cast<std::size_t>(j)]).coeffs;
    const Vec expect = oracle::project_onto_dual_form(k, p.target.coeffs);
    CHECK((res.solution.coeffs - expect).norm() <= 1e-8 * (1.0 + p.target.norm()));
  }
}

TEST_CASE("refining a nested grid never brings the solution closer") {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    const int r = trial % n;
    const LegendrePoly target = random_poly(rng, n);
    double previous = 0.0;
    for (int size = n + 2; size <= 8 * (n + 2); size = 2 * size - 1) {
      ShapeProblem p{n, r, chebyshev_grid(size), target};
      p.refine = false;
      const double dist = project_shape(p).distance;
      CHECK(dist >= previous - 1e-9);
      previous = dist;
    }
  }
}

TEST_CASE("solutions are feasible and respect the zero-count bound") {
  std::mt19937_64 rng(4711);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 7;
    const int r = static_cast<int>(rng() % static_cast<unsigned>(n));
    const ShapeProblem p{n, r, default_shape_grid(n), random_poly(rng, n)};
    const ShapeResult res = project_shape(p);
    CHECK(res.min_derivative_on_checkgrid >= -1e-7);
    CHECK(res.checkgrid.size() == 10 * p.grid.size());
    for (double r_i : res.rho) CHECK(r_i > 0.0);
    if (res.derivative_norm > 1e-8) {
      CHECK(res.bound_applicable);
      CHECK(2 * static_cast<int>(res.active_alphas.size()) <= n - r + 2);
    }
    for (double a : res.active_alphas) CHECK(std::abs(eval_poly(res.solution, a, r)) <= 1e-7 * (1.0 + p.target.norm()));
  }
}

TEST_CASE("derivative local minima") {
  // q = t^2 - 0.25 has its minimum at 0 and endpoint maxima.
  const LegendrePoly q = from_monomials({-0.25, 0.0, 1.0}, 2);
  const auto mins = derivative_local_minima(q, 0);
  bool found = false;
  for (double t : mins) found = found || std::abs(t) < 1e-10;
  CHECK(found);
  // q' = 2t is minimized at the left endpoint.
  const auto slope_mins = derivative_local_minima(q, 1);
  REQUIRE_FALSE(slope_mins.empty());
  CHECK(slope_mins.front() == doctest::Approx(-1.0));
}
