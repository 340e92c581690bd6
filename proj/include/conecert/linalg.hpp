#pragma once

#include <optional>
#include <span>

#include "conecert/types.hpp"

namespace conecert {

/// Thin SVD truncated at the numerical rank.
///
/// A singular value is kept iff sigma_i > max(rows, cols) * eps * sigma_1.
struct SvdFactors {
  Mat u;        // rows x rank
  Vec sigma;    // descending, all above rank_tol
  Mat v;        // cols x rank
  double rank_tol = 0.0;

  Index rank() const { return sigma.size(); }
};

SvdFactors svd(const Mat& m);

Index numerical_rank(const Mat& m);

/// Moore-Penrose inverse. The zero matrix maps to the zero matrix of transposed shape.
Mat pseudoinverse(const Mat& m);

/// I - M^+ M, the orthogonal projector onto N(M).
Mat null_space_projector(const Mat& m);

/// Orthogonal projector onto range(M), i.e. M M^+.
Mat range_projector(const Mat& m);

struct SpanMembership {
  bool member = false;
  std::optional<Vec> coefficients;
  /// x minus its projection onto span(gamma). When member is false this is the
  /// witness: orthogonal to every gamma_i with <x, residual> = |residual|^2 > 0.
  Vec residual;
};

/// Decides whether x lies in span(gamma). An empty gamma spans {0}.
SpanMembership span_membership(const Vec& x, std::span<const Vec> gamma,
                               double tol = kDefaultTol);

}  // namespace conecert
