#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conecert/types.hpp"

namespace conecert {

enum class Orientation {
  Generated,  // D = cone(K)
  DualForm,   // C = -K^polar = {y : <y, k> >= 0 for all k in K}
};

/// A cone described by finitely many generators.
struct ConeSpec {
  std::vector<Vec> generators;
  Orientation orientation = Orientation::Generated;
  /// Optional e with <k, e> > 0 for every generator; enables the pointedness checks
  /// in verify_characterization.
  std::optional<Vec> witness_e;

  /// Throws std::invalid_argument on non-finite or mismatched generators, or on a
  /// witness_e that is not strictly positive against every generator.
  void validate(Index dim) const;
};

struct ProjectionResult {
  Vec point;
  Vec rho;                    // one multiplier per generator, >= 0
  std::vector<Index> active;  // rho_i > 1e-10 * max(1, |rho|_inf), linearly independent
  double kkt_residual = 0.0;
  double orthogonality_residual = 0.0;  // |<x - point, point>|
};

bool contains(const ConeSpec& cone, const Vec& x, double tol = kDefaultTol);

struct PositiveRelative {
  bool positive = false;
  std::optional<Vec> rho;
  /// Separating witness w: <gamma_i, w> <= 0 for all i and <x, w> > 0.
  std::optional<Vec> witness;
};

/// x is positive relative to gamma iff x lies in cone(gamma). The witness, when x
/// is not, is the NNLS residual x - S rho.
PositiveRelative positive_relative_test(std::span<const Vec> gamma, const Vec& x,
                                        double tol = kDefaultTol);

/// Projection onto cone(K). The multipliers satisfy the NNLS optimality system and
/// are supported on an independent subset of K.
ProjectionResult project_generated(std::span<const Vec> generators, const Vec& x,
                                   double tol = kDefaultTol);

/// Projection onto C = {y : <y, k_i> >= 0}, computed as x + P_cone(K)(-x).
/// point = x + sum rho_i k_i with <k_i, point> = 0 on the active set.
ProjectionResult project_dual(std::span<const Vec> generators, const Vec& x,
                              double tol = kDefaultTol);

/// Closed form for orthonormal K: x + sum max(0, -<x, k_i>) k_i.
/// Throws NotOrthonormal when the Gram matrix deviates from I by more than 1e-8.
ProjectionResult project_orthonormal(std::span<const Vec> generators, const Vec& x);

struct MoreauSplit {
  Vec pc;     // P_cone(K)(x)
  Vec pdual;  // P_polar(x) = x - pc
};

MoreauSplit moreau_decompose(std::span<const Vec> generators, const Vec& x,
                             double tol = kDefaultTol);

struct CertificateCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct CertificateReport {
  bool trivial_feasible = false;
  Index active_count = 0;
  Vec rho;                    // multipliers of x0 - x over the independent active set
  std::vector<Index> active;  // generator indices carrying rho
  std::vector<CertificateCheck> checks;

  bool all_pass() const;
  const CertificateCheck* find(const std::string& name) const;
};

/// Checks that x0 = P_C(x) for C = {y : <y, k_i> >= 0} through the characterization
/// x0 = x + sum rho_i k_i (rho_i > 0, independent k_i, <k_i, x0> = 0), together with
/// feasibility of x0, the count bounds m <= d and m <= d - 1 for x0 != 0, and the
/// existence of some <x, k_i> < 0. When x is already in C the report is
/// trivial-feasible and only checks x0 = x.
///
/// Failures are reported as entries, never thrown.
CertificateReport verify_characterization(std::span<const Vec> generators, const Vec& x,
                                          const Vec& x0, double tol = kDefaultTol,
                                          const std::optional<Vec>& witness_e = std::nullopt);

struct DualDecomposition {
  Vec nu;   // component in N(S*)
  Vec eta;  // -S* y, >= 0, in N(S)^perp
  Vec z;    // -(S*)^+ eta, in N(S*)^perp
  Vec x0;   // y - (S*)^+ S* y
};

/// Splits y in the polar of cone(K) as nu + z with nu in N(S*) and z = -(S*)^+ eta.
/// Throws NotInDualCone when some <y, k_i> is positive beyond tolerance.
DualDecomposition dual_cone_decompose(std::span<const Vec> generators, const Vec& y,
                                      double tol = kDefaultTol);

struct ZigDecomposition {
  Vec rho;    // P_C(x) = S rho
  Vec x0;     // x - (S*)^+ S* x, in N(S*)
  Vec eta;    // -S* P_polar(x)
  Vec pc;
  Vec pdual;
};

/// x = S rho + x0 - (S*)^+ eta, with P_polar(x) = x0 - (S*)^+ eta and
/// P_C(x) = S rho = (S*)^+ [S* x + eta].
ZigDecomposition zig_decompose(std::span<const Vec> generators, const Vec& x,
                               double tol = kDefaultTol);

/// Recomputes the four statements of the decomposition for a candidate.
CertificateReport verify_zig(std::span<const Vec> generators, const Vec& x,
                             const ZigDecomposition& zig, double tol = kDefaultTol);

}  // namespace conecert
