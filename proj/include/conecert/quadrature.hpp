#pragma once

#include <functional>
#include <vector>

#include "conecert/types.hpp"

namespace conecert {

struct Interval {
  double a = -1.0;
  double b = 1.0;

  double length() const { return b - a; }
};

/// Integrals of the orthonormal shifted Legendre basis phi_0..phi_n on [a, b].
/// By orthogonality only moment 0 (= sqrt(b - a)) is nonzero.
struct MomentSpec {
  Interval interval;
  int degree = 0;
  Vec moments;
};

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, inside [a, b]
  std::vector<double> weights;  // strictly positive
  int degree = 0;
  Interval interval;

  std::size_t size() const { return nodes.size(); }
};

/// phi_k(t) = sqrt(2 / (b - a)) p_k(u), u = (2t - a - b) / (b - a), for k = 0..n.
Vec shifted_legendre_values(int n, Interval iv, double t);

/// Throws BadInterval when a >= b.
MomentSpec integral_moments(int n, double a, double b);

/// Chebyshev-Lobatto points on [a, b], ascending, endpoints included.
std::vector<double> chebyshev_points(int count, Interval iv);

/// Positive rule with at most n + 1 nodes matching the moments.
///
/// Weights are fitted by NNLS on a Chebyshev grid of `grid_size` candidate nodes,
/// the support is then reduced to linearly independent evaluation vectors, and
/// nodes closer than 1e-12 (b - a) are merged. Requires grid_size >= 4 (n + 1).
/// Throws MomentFitFailed when the grid cannot reproduce the moments.
QuadratureRule positive_quadrature(const MomentSpec& spec, int grid_size);

double apply_rule(const QuadratureRule& rule, const std::function<double(double)>& f);

/// max_k |rule(phi_k) - int phi_k| / sqrt(b - a) over k <= n.
double verify_exactness(const QuadratureRule& rule, int n);

}  // namespace conecert
