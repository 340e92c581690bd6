#include "conecert/legendre.hpp"

#include <cmath>
#include <numbers>

namespace conecert {

LegendreBasis::LegendreBasis(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("LegendreBasis: degree must be nonnegative");
}

double LegendreBasis::normalization(int k) const { return std::sqrt((2.0 * k + 1.0) / 2.0); }

Vec LegendreBasis::values(double t) const { return derivatives(t, 0); }

Vec LegendreBasis::derivatives(double t, int r) const {
  if (r < 0) throw std::invalid_argument("LegendreBasis: derivative order must be nonnegative");
  const Index len = n_ + 1;
  // prev holds the classical P_k^(q-1) while cur is built for order q.
  Vec prev = Vec::Zero(len);
  Vec cur(len);
  for (int q = 0; q <= r; ++q) {
    cur.setZero();
    cur(0) = q == 0 ? 1.0 : 0.0;
    if (len > 1) cur(1) = q == 0 ? t : (q == 1 ? 1.0 : 0.0);
    for (Index k = 1; k + 1 < len; ++k) {
      const double kk = static_cast<double>(k);
      cur(k + 1) = ((2.0 * kk + 1.0) * (t * cur(k) + q * prev(k)) - kk * cur(k - 1)) / (kk + 1.0);
    }
    prev = cur;
  }
  for (Index k = 0; k < len; ++k) cur(k) *= normalization(static_cast<int>(k));
  return cur;
}

GaussRule gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  GaussRule rule{Vec(points), Vec(points)};
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.nodes(i) = -t;
    rule.nodes(n - 1 - i) = t;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  return rule;
}

Mat derivative_matrix(int n, int r) {
  if (n < 0 || r < 0) throw std::invalid_argument("derivative_matrix: n and r must be nonnegative");
  const Index len = n + 1;
  Mat d1 = Mat::Zero(len, len);
  auto c = [](Index k) { return std::sqrt((2.0 * static_cast<double>(k) + 1.0) / 2.0); };
  for (Index k = 1; k < len; ++k) {
    for (Index j = k - 1; j >= 0; j -= 2) d1(j, k) = c(k) * (2.0 * static_cast<double>(j) + 1.0) / c(j);
  }
  Mat out = Mat::Identity(len, len);
  for (int q = 0; q < r; ++q) out = d1 * out;
  return out;
}

}  // namespace conecert
