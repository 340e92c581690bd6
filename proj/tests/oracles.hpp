#pragma once

// Brute-force references used only by the tests. Nothing here calls the NNLS
// solver or the projection routines it is compared against.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline Vec lstsq(const Mat& a, const Vec& b) {
  if (a.cols() == 0) return Vec(0);
  return a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
}

inline Mat columns(const Mat& s, unsigned mask) {
  std::vector<Index> idx;
  for (Index j = 0; j < s.cols(); ++j) {
    if (mask & (1u << j)) idx.push_back(j);
  }
  Mat out(s.rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = s.col(idx[k]);
  return out;
}

struct ConeProjection {
  Vec point;
  double objective = std::numeric_limits<double>::infinity();  // |x - point|^2
};

/// Projection onto cone(columns of S): the optimum lies in the relative interior of
/// a face spanned by an independent subset, where it equals the unconstrained least
/// squares fit with nonnegative coefficients. Enumerate every subset and keep the
/// best nonnegative fit.
inline ConeProjection project_onto_cone(const Mat& s, const Vec& x) {
  ConeProjection best;
  best.point = Vec::Zero(x.size());
  best.objective = x.squaredNorm();
  const unsigned subsets = 1u << s.cols();
  for (unsigned mask = 1; mask < subsets; ++mask) {
    const Mat sub = columns(s, mask);
    const Vec c = lstsq(sub, x);
    if (c.minCoeff() < -1e-12 * (1.0 + c.cwiseAbs().maxCoeff())) continue;
    const Vec p = sub * c.cwiseMax(0.0);
    const double obj = (x - p).squaredNorm();
    if (obj < best.objective) {
      best.objective = obj;
      best.point = p;
    }
  }
  return best;
}

/// Projection onto {y : K^T y >= 0} by enumerating which constraints hold with
/// equality: for each subset A, the candidate is the projection of x onto N(A^T).
inline Vec project_onto_dual_form(const Mat& s, const Vec& x) {
  Vec best = x;
  double best_d = std::numeric_limits<double>::infinity();
  const unsigned subsets = 1u << s.cols();
  for (unsigned mask = 0; mask < subsets; ++mask) {
    const Mat sub = columns(s, mask);
    Vec y = x;
    if (sub.cols() > 0) {
      const Vec c = lstsq(sub, x);
      y = x - sub * c;
    }
    const Vec g = s.transpose() * y;
    bool feasible = true;
    for (Index i = 0; i < g.size(); ++i) {
      if (g(i) < -1e-11 * (1.0 + x.norm()) * s.col(i).norm()) feasible = false;
    }
    if (!feasible) continue;
    const double d = (x - y).norm();
    if (d < best_d) {
      best_d = d;
      best = y;
    }
  }
  return best;
}

/// Generators of the polar {y : S^T y <= 0}: a basis of N(S^T) in both signs plus
/// the extreme rays of the pointed part inside range(S), found by enumerating
/// rank-1 intersections of tight constraints.
inline std::vector<Vec> polar_generators(const Mat& s) {
  const Index d = s.rows();
  std::vector<Vec> out;
  Eigen::JacobiSVD<Mat> svd(s, Eigen::ComputeFullU);
  const Vec& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * std::max(1.0, sv(0))) ++rank;
  const Mat q = svd.matrixU().leftCols(rank);
  for (Index j = rank; j < d; ++j) {
    out.push_back(svd.matrixU().col(j));
    out.push_back(-svd.matrixU().col(j));
  }
  if (rank == 0) return out;
  const Mat a = s.transpose() * q;  // constraints a_i . z <= 0 in range coordinates
  const Index m = a.rows();
  auto feasible = [&](const Vec& z) { return (a * z).maxCoeff() <= 1e-10 * z.norm() * (1.0 + a.norm()); };
  if (rank == 1) {
    for (double sign : {1.0, -1.0}) {
      Vec z(1);
      z << sign;
      if (feasible(z)) out.push_back(q * z);
    }
    return out;
  }
  const unsigned subsets = 1u << m;
  for (unsigned mask = 0; mask < subsets; ++mask) {
    if (static_cast<Index>(__builtin_popcount(mask)) != rank - 1) continue;
    Mat rows(rank - 1, rank);
    Index k = 0;
    for (Index i = 0; i < m; ++i) {
      if (mask & (1u << i)) rows.row(k++) = a.row(i);
    }
    Eigen::JacobiSVD<Mat> rs(rows, Eigen::ComputeFullV);
    const Vec& rsv = rs.singularValues();
    if (rsv(rsv.size() - 1) <= 1e-10 * std::max(1.0, rsv(0))) continue;
    const Vec z = rs.matrixV().col(rank - 1);
    for (double sign : {1.0, -1.0}) {
      if (feasible(sign * z)) out.push_back(q * (sign * z));
    }
  }
  return out;
}

inline Mat random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = n(rng);
  return m;
}

inline Vec random_vector(std::mt19937_64& rng, Index size) { return random_matrix(rng, size, 1).col(0); }

/// Random generator matrix, sometimes with a repeated, zero, or dependent column.
inline Mat random_generators(std::mt19937_64& rng, Index d, Index m) {
  Mat s = random_matrix(rng, d, m);
  std::uniform_int_distribution<int> pick(0, 5);
  if (m >= 2) {
    switch (pick(rng)) {
      case 0: s.col(m - 1) = s.col(0); break;
      case 1: s.col(m - 1).setZero(); break;
      case 2: s.col(m - 1) = 0.5 * s.col(0) + 2.0 * s.col(1); break;
      default: break;
    }
  }
  return s;
}

inline std::vector<Vec> as_list(const Mat& s) {
  std::vector<Vec> out;
  for (Index j = 0; j < s.cols(); ++j) out.emplace_back(s.col(j));
  return out;
}

}  // namespace oracle
