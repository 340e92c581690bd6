#pragma once

#include "conecert/types.hpp"

namespace conecert {

/// Orthonormal Legendre polynomials p_0..p_n on [-1, 1]:
/// p_k = sqrt((2k + 1) / 2) P_k with P_k from the three-term recurrence
/// (k + 1) P_{k+1} = (2k + 1) t P_k - k P_{k-1}.
class LegendreBasis {
 public:
  explicit LegendreBasis(int n);

  int degree() const { return n_; }

  /// sqrt((2k + 1) / 2).
  double normalization(int k) const;

  /// (p_0(t), ..., p_n(t)).
  Vec values(double t) const;

  /// (p_0^(r)(t), ..., p_n^(r)(t)) from the r-times differentiated recurrence
  /// (k + 1) P_{k+1}^(r) = (2k + 1)(t P_k^(r) + r P_k^(r-1)) - k P_{k-1}^(r).
  Vec derivatives(double t, int r) const;

 private:
  int n_;
};

struct GaussRule {
  Vec nodes;
  Vec weights;
};

/// Gauss-Legendre rule with `points` nodes on [-1, 1]; exact through degree 2 points - 1.
GaussRule gauss_legendre(int points);

/// Matrix D_r acting on orthonormal Legendre coordinates: coeffs of p -> coeffs of p^(r).
/// Built from P_k' = sum_{j < k, k - j odd} (2j + 1) P_j.
Mat derivative_matrix(int n, int r);

}  // namespace conecert
