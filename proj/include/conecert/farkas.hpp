#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "conecert/types.hpp"

namespace conecert {

enum class FarkasSystem {
  System1,  // A^T y = b, y >= 0
  System2,  // A x <= 0, <b, x> > 0
};

struct FarkasVerification {
  double primal_residual = 0.0;  // |A^T y - b|, or max_i (A x)_i+ / |a_i|
  double dual_violation = 0.0;   // max(-y_i, 0); zero for System2
  double strict_gap = 0.0;       // <b, x> for System2; zero for System1
};

struct FarkasOutcome {
  FarkasSystem tag = FarkasSystem::System1;
  std::optional<Vec> y;
  std::optional<Vec> x;
  FarkasVerification verification;
};

/// Residual norm above which b is declared outside cone(rows of A).
double farkas_threshold(const Vec& b);

/// Decides which of the two Farkas systems is solvable. NNLS projects b onto the
/// cone spanned by the rows a_i; a residual at most 1e-7 (1 + |b|) yields System1
/// with y = rho, otherwise the residual itself is the System2 witness.
FarkasOutcome farkas_alternative(const Mat& a, const Vec& b, double tol = kDefaultTol);

/// Re-checks a certificate against A and b without trusting the stored report.
/// System1: y >= 0 and |A^T y - b| <= tol (1 + |b|).
/// System2: (A x)_i <= tol (1 + |x|) |a_i|, <b, x> >= |x|^2 / 2 > 0 and
/// |x| > tol (1 + |b|).
bool verify_outcome(const Mat& a, const Vec& b, const FarkasOutcome& outcome,
                    double tol = kDefaultTol);

struct GenFarkasReport {
  bool member_plain = false;      // (b, r) in cone{(s_j, p_j)}
  bool member_augmented = false;  // (b, r) in cone({(0, 1)} + {(s_j, p_j)})
  bool sampled_implication_holds = false;
  bool hypothesis_verified = false;  // a feasible x was found
  int samples_checked = 0;
  std::optional<Vec> feasible_point;
  std::optional<Vec> violating_point;  // feasible x with <b, x> > r
};

using HalfSpace = std::pair<Vec, double>;  // {x : <s, x> <= p}

/// Searches for a point of the polyhedron by cyclic halfspace projections with
/// Dykstra corrections, starting at the origin. Returns nullopt when the sweep
/// budget runs out before every inequality holds to tolerance.
std::optional<Vec> find_feasible_point(std::span<const HalfSpace> system, Index dim,
                                       double tol = kDefaultTol, int max_sweeps = 20000);

/// Finite-index generalized Farkas report for the system <s_j, x> <= p_j and the
/// candidate consequence <b, x> <= r. Memberships are decided in R^{n+1}; the
/// implication is spot-checked on up to `samples` rejection-sampled feasible points.
GenFarkasReport generalized_farkas(std::span<const HalfSpace> pairs, const Vec& b, double r,
                                   double tol = kDefaultTol, std::uint64_t seed = 0,
                                   int samples = 100);

}  // namespace conecert
