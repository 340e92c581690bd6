#pragma once

#include "conecert/types.hpp"

namespace conecert {

struct NnlsResult {
  Vec rho;       // >= 0, one entry per column of S
  Vec residual;  // x - S rho
  int pivots = 0;
};

/// Nonnegative least squares: minimize |x - S rho| subject to rho >= 0.
///
/// Lawson-Hanson active-set iteration. A column enters the passive set while its
/// gradient <x - S rho, k_j> exceeds tol * (1 + |x|) * |k_j|; among candidates the
/// largest gradient wins and ties go to the lowest index. On return S rho is the
/// projection of x onto cone(columns of S).
///
/// Throws IterationLimit after 3 * m * d pivots (entries plus removals).
NnlsResult nnls(const Mat& s, const Vec& x, double tol = kDefaultTol);

/// Worst normalized violation of the projection optimality conditions for rho:
/// max over i of <x - S rho, k_i>_+ / ((1 + |x|) |k_i|) and
/// |rho_i <x - S rho, k_i>| / ((1 + |x|) |k_i| (1 + |rho|_inf)), and max(-rho_i, 0).
double kkt_violation(const Mat& s, const Vec& x, const Vec& rho);

}  // namespace conecert
