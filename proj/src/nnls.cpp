#include "conecert/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace conecert {
namespace {

Vec solve_passive(const Mat& s, const Vec& x, const std::vector<Index>& passive) {
  Mat sub(s.rows(), static_cast<Index>(passive.size()));
  for (std::size_t k = 0; k < passive.size(); ++k) sub.col(static_cast<Index>(k)) = s.col(passive[k]);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(sub);
  return cod.solve(x);
}

}  // namespace

NnlsResult nnls(const Mat& s, const Vec& x, double tol) {
  if (s.rows() != x.size()) {
    throw std::invalid_argument("nnls: S has " + std::to_string(s.rows()) +
                                " rows but x has dimension " + std::to_string(x.size()));
  }
  if (!(tol > 0.0)) throw std::invalid_argument("nnls: tol must be positive");

  const Index m = s.cols();
  const Index d = s.rows();
  NnlsResult out;
  out.rho = Vec::Zero(m);
  out.residual = x;
  if (m == 0 || d == 0) return out;

  const long limit = 3L * m * d;
  const double xscale = tol * (1.0 + x.norm());
  Vec colnorm(m);
  for (Index j = 0; j < m; ++j) colnorm(j) = s.col(j).norm();

  std::vector<bool> in_passive(static_cast<std::size_t>(m), false);
  std::vector<bool> blocked(static_cast<std::size_t>(m), false);
  Vec& rho = out.rho;
  Vec w = s.transpose() * x;

  auto bump = [&] {
    if (++out.pivots > limit) {
      throw IterationLimit("nnls: active-set loop exceeded " + std::to_string(limit) + " pivots");
    }
  };

  for (;;) {
    Index enter = -1;
    double best = 0.0;
    for (Index j = 0; j < m; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (in_passive[uj] || blocked[uj] || colnorm(j) == 0.0) continue;
      if (w(j) > xscale * colnorm(j) && (enter < 0 || w(j) > best)) {
        enter = j;
        best = w(j);
      }
    }
    if (enter < 0) break;
    bump();
    in_passive[static_cast<std::size_t>(enter)] = true;

    bool first_pass = true;
    for (;;) {
      std::vector<Index> passive;
      for (Index j = 0; j < m; ++j) {
        if (in_passive[static_cast<std::size_t>(j)]) passive.push_back(j);
      }
      const Vec z = solve_passive(s, x, passive);

      // A freshly entered column that does not come out positive is numerically
      // dependent on the passive set; park it until the passive set changes.
      if (first_pass) {
        const auto pos = std::find(passive.begin(), passive.end(), enter) - passive.begin();
        if (z(pos) <= 0.0) {
          in_passive[static_cast<std::size_t>(enter)] = false;
          blocked[static_cast<std::size_t>(enter)] = true;
          break;
        }
      }
      first_pass = false;

      bool feasible = true;
      double alpha = 1.0;
      for (std::size_t k = 0; k < passive.size(); ++k) {
        const auto kk = static_cast<Index>(k);
        if (z(kk) <= 0.0) {
          feasible = false;
          const double ri = rho(passive[k]);
          alpha = std::min(alpha, ri / (ri - z(kk)));
        }
      }
      if (feasible) {
        rho.setZero();
        for (std::size_t k = 0; k < passive.size(); ++k) rho(passive[k]) = z(static_cast<Index>(k));
        std::fill(blocked.begin(), blocked.end(), false);
        break;
      }
      bump();
      for (std::size_t k = 0; k < passive.size(); ++k) {
        const Index j = passive[k];
        rho(j) += alpha * (z(static_cast<Index>(k)) - rho(j));
        if (rho(j) <= 0.0 || (z(static_cast<Index>(k)) <= 0.0 && rho(j) <= 1e-15 * (1.0 + rho.lpNorm<Eigen::Infinity>()))) {
          rho(j) = 0.0;
          in_passive[static_cast<std::size_t>(j)] = false;
        }
      }
      if (std::none_of(in_passive.begin(), in_passive.end(), [](bool b) { return b; })) break;
    }
    out.residual = x - s * rho;
    w = s.transpose() * out.residual;
  }

  out.residual = x - s * rho;
  return out;
}

double kkt_violation(const Mat& s, const Vec& x, const Vec& rho) {
  const Vec r = x - s * rho;
  const Vec g = s.transpose() * r;
  const double xs = 1.0 + x.norm();
  const double rs = 1.0 + (rho.size() ? rho.lpNorm<Eigen::Infinity>() : 0.0);
  double worst = 0.0;
  for (Index i = 0; i < s.cols(); ++i) {
    worst = std::max(worst, std::max(-rho(i), 0.0));
    const double kn = s.col(i).norm();
    if (kn == 0.0) continue;
    worst = std::max(worst, std::max(g(i), 0.0) / (xs * kn));
    worst = std::max(worst, std::abs(rho(i) * g(i)) / (xs * kn * rs));
  }
  return worst;
}

}  // namespace conecert
