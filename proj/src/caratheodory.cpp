#include "conecert/caratheodory.hpp"

#include <cmath>
#include <limits>

#include "conecert/linalg.hpp"

namespace conecert {

CaratheodoryResult caratheodory_reduce(std::span<const Vec> vectors, const Vec& weights) {
  const Index dim = vectors.empty() ? 0 : vectors.front().size();
  return caratheodory_reduce(synthesis_matrix(vectors, dim), weights);
}

CaratheodoryResult caratheodory_reduce(const Mat& columns, const Vec& weights) {
  if (weights.size() != columns.cols()) {
    throw std::invalid_argument("caratheodory_reduce: " + std::to_string(columns.cols()) +
                                " vectors but " + std::to_string(weights.size()) + " weights");
  }
  std::vector<Index> support;
  std::vector<double> w;
  for (Index i = 0; i < weights.size(); ++i) {
    if (weights(i) < 0.0 || !std::isfinite(weights(i))) {
      throw std::invalid_argument("caratheodory_reduce: weights must be positive and finite");
    }
    if (weights(i) > 0.0) {
      support.push_back(i);
      w.push_back(weights(i));
    }
  }

  const Index rows = columns.rows();
  while (!support.empty()) {
    const auto size = static_cast<Index>(support.size());
    Mat sub(rows, size);
    for (Index k = 0; k < size; ++k) sub.col(k) = columns.col(support[static_cast<std::size_t>(k)]);

    Vec eta;
    if (rows == 0 || sub.norm() == 0.0) {
      eta = Vec::Unit(size, 0);
    } else {
      Eigen::JacobiSVD<Mat> dec(sub, Eigen::ComputeFullV);
      const Vec& s = dec.singularValues();
      const double tol = static_cast<double>(std::max(rows, size)) *
                         std::numeric_limits<double>::epsilon() * s(0);
      Index rank = 0;
      while (rank < s.size() && s(rank) > tol) ++rank;
      if (rank == size) break;
      eta = dec.matrixV().col(size - 1);
    }
    if (eta.maxCoeff() <= 0.0) eta = -eta;

    double tstar = std::numeric_limits<double>::infinity();
    std::size_t drop = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double e = eta(static_cast<Index>(k));
      if (e > 0.0 && w[k] / e < tstar) {
        tstar = w[k] / e;
        drop = k;
      }
    }
    double wmax = 0.0;
    for (double v : w) wmax = std::max(wmax, v);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] -= tstar * eta(static_cast<Index>(k));
    w[drop] = 0.0;

    std::vector<Index> next_support;
    std::vector<double> next_w;
    for (std::size_t k = 0; k < w.size(); ++k) {
      // Rounding can leave weights that should have tied at zero slightly off it.
      if (w[k] > 1e-15 * wmax) {
        next_support.push_back(support[k]);
        next_w.push_back(w[k]);
      }
    }
    support = std::move(next_support);
    w = std::move(next_w);
  }

  CaratheodoryResult out;
  out.indices = std::move(support);
  out.weights = Eigen::Map<const Vec>(w.data(), static_cast<Index>(w.size()));
  return out;
}

}  // namespace conecert
