#include "conecert/linalg.hpp"

#include <algorithm>
#include <limits>

namespace conecert {

Mat synthesis_matrix(std::span<const Vec> generators, Index dim) {
  Mat s(dim, static_cast<Index>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != dim) {
      throw std::invalid_argument("generator " + std::to_string(j) + " has dimension " +
                                  std::to_string(generators[j].size()) + ", expected " +
                                  std::to_string(dim));
    }
    s.col(static_cast<Index>(j)) = generators[j];
  }
  return s;
}

std::vector<Vec> columns_of(const Mat& m) {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j) out.emplace_back(m.col(j));
  return out;
}

bool all_finite(const Vec& v) { return v.allFinite(); }
bool all_finite(const Mat& m) { return m.allFinite(); }

SvdFactors svd(const Mat& m) {
  SvdFactors f;
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (rows == 0 || cols == 0) {
    f.u = Mat(rows, 0);
    f.sigma = Vec(0);
    f.v = Mat(cols, 0);
    return f;
  }
  Eigen::JacobiSVD<Mat> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = dec.singularValues();
  const double eps = std::numeric_limits<double>::epsilon();
  f.rank_tol = static_cast<double>(std::max(rows, cols)) * eps * s(0);
  Index r = 0;
  while (r < s.size() && s(r) > f.rank_tol) ++r;
  f.u = dec.matrixU().leftCols(r);
  f.sigma = s.head(r);
  f.v = dec.matrixV().leftCols(r);
  return f;
}

Index numerical_rank(const Mat& m) { return svd(m).rank(); }

Mat pseudoinverse(const Mat& m) {
  const SvdFactors f = svd(m);
  if (f.rank() == 0) return Mat::Zero(m.cols(), m.rows());
  return f.v * f.sigma.cwiseInverse().asDiagonal() * f.u.transpose();
}

Mat null_space_projector(const Mat& m) {
  const SvdFactors f = svd(m);
  return Mat::Identity(m.cols(), m.cols()) - f.v * f.v.transpose();
}

Mat range_projector(const Mat& m) {
  const SvdFactors f = svd(m);
  return f.u * f.u.transpose();
}

SpanMembership span_membership(const Vec& x, std::span<const Vec> gamma, double tol) {
  const Mat s = synthesis_matrix(gamma, x.size());
  const SvdFactors f = svd(s);
  SpanMembership out;
  // Project with the range basis directly; going through M^+ loses orthogonality.
  out.residual = x - f.u * (f.u.transpose() * x);
  out.member = out.residual.norm() <= tol * (1.0 + x.norm());
  if (out.member) {
    Vec c = Vec::Zero(s.cols());
    if (f.rank() > 0) {
      c = f.v * (f.sigma.cwiseInverse().asDiagonal() * (f.u.transpose() * x));
    }
    out.residual = x - s * c;
    out.coefficients = std::move(c);
  }
  return out;
}

}  // namespace conecert
