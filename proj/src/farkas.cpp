#include "conecert/farkas.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "conecert/cone.hpp"
#include "conecert/nnls.hpp"

namespace conecert {

double farkas_threshold(const Vec& b) { return 1e-7 * (1.0 + b.norm()); }

FarkasOutcome farkas_alternative(const Mat& a, const Vec& b, double tol) {
  if (a.cols() != b.size()) {
    throw std::invalid_argument("farkas: A has " + std::to_string(a.cols()) +
                                " columns but b has dimension " + std::to_string(b.size()));
  }
  if (!a.allFinite() || !b.allFinite()) throw std::invalid_argument("farkas: non-finite input");

  // Tighter NNLS tolerance so the System2 bound, scaled by 1 + |x|, holds.
  const NnlsResult fit = nnls(a.transpose(), b, tol / (1.0 + b.norm()));
  FarkasOutcome out;
  if (fit.residual.norm() <= farkas_threshold(b)) {
    out.tag = FarkasSystem::System1;
    out.y = fit.rho;
    out.verification.primal_residual = (a.transpose() * fit.rho - b).norm();
    out.verification.dual_violation = std::max(0.0, fit.rho.size() ? -fit.rho.minCoeff() : 0.0);
  } else {
    out.tag = FarkasSystem::System2;
    const Vec& x = fit.residual;
    out.x = x;
    const Vec ax = a * x;
    double worst = 0.0;
    for (Index i = 0; i < a.rows(); ++i) {
      const double n = a.row(i).norm();
      if (n > 0.0) worst = std::max(worst, std::max(ax(i), 0.0) / n);
    }
    out.verification.primal_residual = worst;
    out.verification.strict_gap = b.dot(x);
  }
  return out;
}

bool verify_outcome(const Mat& a, const Vec& b, const FarkasOutcome& outcome, double tol) {
  if (outcome.tag == FarkasSystem::System1) {
    if (!outcome.y || outcome.x) return false;
    const Vec& y = *outcome.y;
    if (y.size() != a.rows() || !y.allFinite()) return false;
    if (y.size() && y.minCoeff() < 0.0) return false;
    return (a.transpose() * y - b).norm() <= tol * (1.0 + b.norm());
  }
  if (!outcome.x || outcome.y) return false;
  const Vec& x = *outcome.x;
  if (x.size() != a.cols() || !x.allFinite()) return false;
  const Vec ax = a * x;
  for (Index i = 0; i < a.rows(); ++i) {
    if (ax(i) > tol * (1.0 + x.norm()) * a.row(i).norm()) return false;
  }
  const double gap = b.dot(x);
  return x.norm() > tol * (1.0 + b.norm()) && gap > 0.0 && gap >= 0.5 * x.squaredNorm();
}

std::optional<Vec> find_feasible_point(std::span<const HalfSpace> system, Index dim, double tol,
                                       int max_sweeps) {
  const auto m = system.size();
  auto violation = [&](const Vec& x) {
    double worst = 0.0;
    for (const auto& [s, p] : system) {
      const double scale = tol * (1.0 + std::abs(p) + s.norm() * x.norm());
      worst = std::max(worst, (s.dot(x) - p) / scale);
    }
    return worst;
  };

  Vec x = Vec::Zero(dim);
  if (violation(x) <= 1.0) return x;
  for (const auto& [s, p] : system) {
    if (s.size() != dim) throw std::invalid_argument("halfspace normal has wrong dimension");
    if (s.norm() == 0.0 && p < 0.0) return std::nullopt;
  }

  std::vector<Vec> corr(m, Vec::Zero(dim));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& [s, p] = system[j];
      const double nn = s.squaredNorm();
      if (nn == 0.0) continue;
      const Vec y = x + corr[j];
      const double excess = s.dot(y) - p;
      const Vec proj = excess > 0.0 ? Vec(y - (excess / nn) * s) : y;
      corr[j] = y - proj;
      x = proj;
    }
    if (violation(x) <= 1.0) return x;
  }
  return std::nullopt;
}

GenFarkasReport generalized_farkas(std::span<const HalfSpace> pairs, const Vec& b, double r,
                                   double tol, std::uint64_t seed, int samples) {
  const Index n = b.size();
  std::vector<Vec> lifted;
  lifted.reserve(pairs.size() + 1);
  for (const auto& [s, p] : pairs) {
    if (s.size() != n) throw std::invalid_argument("generalized_farkas: s_j has wrong dimension");
    Vec v(n + 1);
    v << s, p;
    lifted.push_back(std::move(v));
  }
  Vec target(n + 1);
  target << b, r;

  GenFarkasReport rep;
  rep.member_plain = positive_relative_test(lifted, target, tol).positive;
  lifted.push_back(Vec::Unit(n + 1, n));
  rep.member_augmented = positive_relative_test(lifted, target, tol).positive;

  rep.feasible_point = find_feasible_point(pairs, n, tol);
  rep.hypothesis_verified = rep.feasible_point.has_value();
  rep.sampled_implication_holds = true;
  if (!rep.feasible_point) return rep;

  auto feasible = [&](const Vec& x) {
    return std::all_of(pairs.begin(), pairs.end(), [&](const HalfSpace& h) {
      return h.first.dot(x) <= h.second + tol * (1.0 + std::abs(h.second) + h.first.norm() * x.norm());
    });
  };
  auto implied = [&](const Vec& x) {
    return b.dot(x) <= r + tol * (1.0 + std::abs(r) + b.norm() * x.norm());
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Vec& centre = *rep.feasible_point;
  const double base = 1.0 + centre.norm();
  const double scales[] = {1.0, 10.0, 100.0};

  auto record = [&](const Vec& x) {
    ++rep.samples_checked;
    if (!implied(x) && rep.sampled_implication_holds) {
      rep.sampled_implication_holds = false;
      rep.violating_point = x;
    }
  };
  record(centre);
  const long max_attempts = 200L * std::max(samples, 1);
  for (long attempt = 0; attempt < max_attempts && rep.samples_checked < samples; ++attempt) {
    Vec x(n);
    for (Index i = 0; i < n; ++i) x(i) = normal(rng);
    x = centre + (base * scales[attempt % 3]) * x;
    if (feasible(x)) record(x);
  }
  return rep;
}

}  // namespace conecert
