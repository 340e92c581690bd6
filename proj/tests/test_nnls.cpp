#include <doctest.h>

#include <random>

#include "conecert/nnls.hpp"
#include "oracles.hpp"

using namespace conecert;

namespace {

Mat cols2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, c, b, d;  // columns (a, b) and (c, d)
  return m;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("nnls on the coordinate cone clips the negative part") {
  const NnlsResult r = nnls(Mat::Identity(2, 2), v2(1, -1));
  CHECK((r.rho - v2(1, 0)).norm() < 1e-15);
  CHECK((r.residual - v2(0, -1)).norm() < 1e-15);
}

TEST_CASE("nnls on the worked two-generator cone") {
  const NnlsResult r = nnls(cols2(0, -1, 1, 1), v2(-2, -1));
  CHECK((r.rho - v2(1, 0)).norm() < 1e-14);
  CHECK((cols2(0, -1, 1, 1) * r.rho - v2(0, -1)).norm() < 1e-14);
}

TEST_CASE("nnls single ray gives <x,k>/|k|^2") {
  Mat s(2, 1);
  s << 1, 1;
  const NnlsResult r = nnls(s, v2(1, 0));
  CHECK(r.rho(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK((s * r.rho - v2(0.5, 0.5)).norm() < 1e-15);
}

TEST_CASE("nnls handles empty and zero generators") {
  const NnlsResult empty = nnls(Mat(2, 0), v2(1, 2));
  CHECK(empty.rho.size() == 0);
  CHECK((empty.residual - v2(1, 2)).norm() == 0.0);
  const NnlsResult zero = nnls(Mat::Zero(2, 3), v2(1, 2));
  CHECK(zero.rho.norm() == 0.0);
}

TEST_CASE("nnls rejects bad arguments") {
  CHECK_THROWS_AS(nnls(Mat::Identity(2, 2), Vec::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(nnls(Mat::Identity(2, 2), Vec::Ones(2), 0.0), std::invalid_argument);
}

TEST_CASE("ties on the entering gradient go to the lowest index") {
  // Both columns see the same gradient; either projection is the same point, but
  // the active-set rule must pick column 0 first and then stop.
  Mat s(2, 2);
  s << 1, 1, 0, 0;
  const NnlsResult r = nnls(s, v2(3, 0));
  CHECK(r.rho(0) == doctest::Approx(3.0));
  CHECK(r.rho(1) == 0.0);
}

TEST_CASE("nnls optimality conditions and brute-force objective") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dim(rng);
    const int m = dim(rng);
    const Mat s = oracle::random_generators(rng, d, m);
    const Vec x = oracle::random_vector(rng, d);
    const NnlsResult r = nnls(s, x);
    CHECK(r.rho.minCoeff() >= 0.0);
    CHECK(kkt_violation(s, x, r.rho) <= 1e-9);
    const oracle::ConeProjection best = oracle::project_onto_cone(s, x);
    CHECK(std::abs((x - s * r.rho).squaredNorm() - best.objective) <= 1e-9 * (1.0 + x.squaredNorm()));
  }
}
