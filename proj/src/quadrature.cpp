#include "conecert/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "conecert/caratheodory.hpp"
#include "conecert/legendre.hpp"
#include "conecert/nnls.hpp"

namespace conecert {

Vec shifted_legendre_values(int n, Interval iv, double t) {
  const double u = (2.0 * t - iv.a - iv.b) / iv.length();
  return std::sqrt(2.0 / iv.length()) * LegendreBasis(n).values(u);
}

MomentSpec integral_moments(int n, double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw BadInterval("interval [" + std::to_string(a) + ", " + std::to_string(b) + "] is empty");
  }
  if (n < 0) throw std::invalid_argument("integral_moments: degree must be nonnegative");
  MomentSpec spec{{a, b}, n, Vec::Zero(n + 1)};
  spec.moments(0) = std::sqrt(b - a);
  return spec;
}

std::vector<double> chebyshev_points(int count, Interval iv) {
  std::vector<double> pts(static_cast<std::size_t>(count));
  const double mid = 0.5 * (iv.a + iv.b);
  const double half = 0.5 * iv.length();
  if (count == 1) {
    pts[0] = mid;
    return pts;
  }
  for (int j = 0; j < count; ++j) {
    pts[static_cast<std::size_t>(j)] = mid - half * std::cos(std::numbers::pi * j / (count - 1));
  }
  pts.front() = iv.a;
  pts.back() = iv.b;
  return pts;
}

QuadratureRule positive_quadrature(const MomentSpec& spec, int grid_size) {
  const int n = spec.degree;
  const Interval iv = spec.interval;
  if (!(iv.a < iv.b)) throw BadInterval("empty interval");
  if (spec.moments.size() != n + 1) throw std::invalid_argument("moment vector length != n + 1");
  if (grid_size < 4 * (n + 1)) {
    throw std::invalid_argument("grid_size must be at least 4 (n + 1) = " + std::to_string(4 * (n + 1)));
  }

  const std::vector<double> grid = chebyshev_points(grid_size, iv);
  Mat evals(n + 1, grid_size);
  for (int j = 0; j < grid_size; ++j) evals.col(j) = shifted_legendre_values(n, iv, grid[static_cast<std::size_t>(j)]);

  const double scale = 1.0 + std::abs(spec.moments(0));
  const NnlsResult fit = nnls(evals, spec.moments, 1e-12);
  if (fit.residual.lpNorm<Eigen::Infinity>() > 1e-8 * scale) {
    throw MomentFitFailed("moment residual " + std::to_string(fit.residual.norm()) +
                          " on a grid of " + std::to_string(grid_size) + " nodes");
  }
  const CaratheodoryResult red = caratheodory_reduce(evals, fit.rho);

  // The reduced support is independent, so the moment system restricted to it
  // has a unique least-squares solution; use it when it stays positive.
  Mat sub(n + 1, static_cast<Index>(red.indices.size()));
  for (std::size_t k = 0; k < red.indices.size(); ++k) sub.col(static_cast<Index>(k)) = evals.col(red.indices[k]);
  Vec weights = red.weights;
  if (!red.indices.empty()) {
    const Vec refit = sub.colPivHouseholderQr().solve(spec.moments);
    if (refit.allFinite() && refit.minCoeff() > 0.0 &&
        (sub * refit - spec.moments).norm() <= (sub * weights - spec.moments).norm()) {
      weights = refit;
    }
  }

  QuadratureRule rule;
  rule.degree = n;
  rule.interval = iv;
  const double merge = 1e-12 * iv.length();
  for (std::size_t k = 0; k < red.indices.size(); ++k) {
    const double w = weights(static_cast<Index>(k));
    if (!(w > 1e-12)) continue;
    const double t = grid[static_cast<std::size_t>(red.indices[k])];
    if (!rule.nodes.empty() && t - rule.nodes.back() < merge) {
      rule.weights.back() += w;
    } else {
      rule.nodes.push_back(t);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

double apply_rule(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

double verify_exactness(const QuadratureRule& rule, int n) {
  const MomentSpec exact = integral_moments(n, rule.interval.a, rule.interval.b);
  Vec got = Vec::Zero(n + 1);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    got += rule.weights[i] * shifted_legendre_values(n, rule.interval, rule.nodes[i]);
  }
  return (got - exact.moments).lpNorm<Eigen::Infinity>() / std::abs(exact.moments(0));
}

}  // namespace conecert
