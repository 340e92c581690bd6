#pragma once

#include <functional>
#include <vector>

#include "conecert/types.hpp"

namespace conecert {

/// Polynomial of degree <= n in orthonormal Legendre coordinates on [-1, 1].
struct LegendrePoly {
  Vec coeffs;

  int degree_bound() const { return static_cast<int>(coeffs.size()) - 1; }
  /// L2[-1, 1] norm (Parseval).
  double norm() const { return coeffs.norm(); }
};

/// Coordinates of sum_k c_k t^k.
LegendrePoly from_monomials(const std::vector<double>& c, int n);

/// Orthogonal projection of f onto P_n, by Gauss-Legendre quadrature with `points` nodes.
LegendrePoly project_function(const std::function<double(double)>& f, int n, int points = 64);

/// p^(r)(t); zero for r > n.
double eval_poly(const LegendrePoly& p, double t, int r = 0);

/// k_alpha = sum_i p_i^(r)(alpha) p_i, the representer of p -> p^(r)(alpha) on P_n.
LegendrePoly representer(int n, int r, double alpha);

/// Chebyshev-Lobatto grid on [-1, 1]. Sizes s and 2s - 1 are nested.
std::vector<double> chebyshev_grid(int size);

/// 20 (n + 1) Chebyshev points.
std::vector<double> default_shape_grid(int n);

struct ShapeProblem {
  int n = 1;
  int r = 0;
  std::vector<double> grid;
  LegendrePoly target;
  /// Insert local minimizers of solution^(r) into the grid until the constraint
  /// holds on all of [-1, 1]. With refine off the grid problem is solved as given.
  bool refine = true;

  /// Throws std::invalid_argument unless 0 <= r <= n, the grid is sorted inside
  /// [-1, 1] with at least n + 1 points, and target has n + 1 coordinates.
  void validate() const;
};

struct ShapeResult {
  LegendrePoly solution;
  std::vector<double> active_alphas;  // independent active grid points, ascending
  std::vector<double> rho;            // > 0, aligned with active_alphas
  double min_derivative_on_checkgrid = 0.0;
  double max_active_derivative = 0.0;  // max |solution^(r)(alpha_i)| over the active set
  double distance = 0.0;               // |target - solution|
  double derivative_norm = 0.0;        // |D_r solution|
  bool bound_applicable = false;       // solution^(r) not identically zero
  bool bound_ok = true;                // m <= (n - r + 2) / 2 when applicable
  std::vector<double> checkgrid;
  std::vector<double> grid_used;  // problem grid plus inserted minimizers
  int exchange_rounds = 0;
};

/// Local minimizers of q^(r) on [-1, 1] for q in Legendre coordinates, endpoints
/// included, each refined by safeguarded Newton on q^(r+1).
std::vector<double> derivative_local_minima(const LegendrePoly& q, int r);

/// Best L2 approximation of the target from {p in P_n : p^(r)(alpha_j) >= 0 on the grid}.
///
/// Solved as the dual-form cone projection over the representers k_alpha_j in
/// coefficient space. With refine on, an exchange loop adds the minimizers of
/// solution^(r) that fall below -tol (1 + |target|) and drops inserted points that
/// went inactive. Feasibility is certified on a uniform check grid ten times
/// denser than the problem grid.
ShapeResult project_shape(const ShapeProblem& problem, double tol = kDefaultTol);

}  // namespace conecert
