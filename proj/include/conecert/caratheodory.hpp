#pragma once

#include <span>
#include <vector>

#include "conecert/types.hpp"

namespace conecert {

struct CaratheodoryResult {
  std::vector<Index> indices;  // ascending, into the input list
  Vec weights;                 // strictly positive, aligned with indices
};

/// Rewrites sum_i w_i v_i (all w_i > 0) as a positive combination of a linearly
/// independent subset of the v_i.
///
/// While the support is dependent, a null-space direction eta of the supporting
/// vectors is taken with some eta_i > 0, the weights move by -t* eta with
/// t* = min{w_i / eta_i : eta_i > 0}, and the weight attaining the minimum is
/// dropped. A zero weighted sum reduces to the empty combination.
CaratheodoryResult caratheodory_reduce(std::span<const Vec> vectors, const Vec& weights);

/// Same, with the vectors given as the columns of a matrix.
CaratheodoryResult caratheodory_reduce(const Mat& columns, const Vec& weights);

}  // namespace conecert
