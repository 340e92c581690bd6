#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conecert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Relative tolerance used when a caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Active-set loop ran past its pivot budget; the input is numerically degenerate.
class IterationLimit : public Error {
 public:
  using Error::Error;
};

class NotOrthonormal : public Error {
 public:
  using Error::Error;
};

class NotInDualCone : public Error {
 public:
  using Error::Error;
};

class BadInterval : public Error {
 public:
  using Error::Error;
};

/// NNLS could not match the moments on the candidate grid; retry with a denser grid.
class MomentFitFailed : public Error {
 public:
  using Error::Error;
};

/// Stacks generators as the columns of the synthesis matrix S (d x m).
/// With no generators the result is d x 0.
Mat synthesis_matrix(std::span<const Vec> generators, Index dim);

/// Converts the columns of a matrix back into a generator list.
std::vector<Vec> columns_of(const Mat& m);

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

}  // namespace conecert
