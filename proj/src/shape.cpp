#include "conecert/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "conecert/cone.hpp"
#include "conecert/legendre.hpp"
#include "conecert/quadrature.hpp"

namespace conecert {

LegendrePoly from_monomials(const std::vector<double>& c, int n) {
  if (static_cast<int>(c.size()) > n + 1) {
    for (std::size_t k = static_cast<std::size_t>(n) + 1; k < c.size(); ++k) {
      if (c[k] != 0.0) throw std::invalid_argument("monomial degree exceeds n");
    }
  }
  auto f = [&](double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  return project_function(f, n, std::max<int>(n + 2, static_cast<int>(c.size()) + 1));
}

LegendrePoly project_function(const std::function<double(double)>& f, int n, int points) {
  const GaussRule g = gauss_legendre(points);
  const LegendreBasis basis(n);
  LegendrePoly p{Vec::Zero(n + 1)};
  for (Index i = 0; i < g.nodes.size(); ++i) p.coeffs += g.weights(i) * f(g.nodes(i)) * basis.values(g.nodes(i));
  return p;
}

double eval_poly(const LegendrePoly& p, double t, int r) {
  const int n = p.degree_bound();
  if (r > n) return 0.0;
  const Vec dr = derivative_matrix(n, r) * p.coeffs;
  return dr.dot(LegendreBasis(n).values(t));
}

LegendrePoly representer(int n, int r, double alpha) {
  if (alpha < -1.0 || alpha > 1.0) throw std::invalid_argument("representer: alpha outside [-1, 1]");
  return {derivative_matrix(n, r).transpose() * LegendreBasis(n).values(alpha)};
}

std::vector<double> chebyshev_grid(int size) { return chebyshev_points(size, Interval{-1.0, 1.0}); }

std::vector<double> default_shape_grid(int n) { return chebyshev_grid(20 * (n + 1)); }

void ShapeProblem::validate() const {
  if (r < 0 || r > n) throw std::invalid_argument("shape problem needs 0 <= r <= n");
  if (static_cast<int>(grid.size()) < n + 1) throw std::invalid_argument("grid needs at least n + 1 points");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("grid must be sorted");
  if (grid.front() < -1.0 || grid.back() > 1.0) throw std::invalid_argument("grid must lie in [-1, 1]");
  if (target.coeffs.size() != n + 1) throw std::invalid_argument("target must have n + 1 coefficients");
  if (!target.coeffs.allFinite()) throw std::invalid_argument("target is not finite");
}

std::vector<double> derivative_local_minima(const LegendrePoly& q, int r) {
  const int n = q.degree_bound();
  const LegendreBasis basis(n);
  const Vec c0 = derivative_matrix(n, r) * q.coeffs;
  const Vec c1 = derivative_matrix(n, r + 1) * q.coeffs;
  const Vec c2 = derivative_matrix(n, r + 2) * q.coeffs;
  auto val = [&](double t) { return c0.dot(basis.values(t)); };
  auto d1 = [&](double t) { return c1.dot(basis.values(t)); };
  auto d2 = [&](double t) { return c2.dot(basis.values(t)); };

  const int samples = 64 * (n + 2);
  std::vector<double> t(static_cast<std::size_t>(samples));
  std::vector<double> v(t.size());
  for (int j = 0; j < samples; ++j) {
    t[static_cast<std::size_t>(j)] = -1.0 + 2.0 * j / (samples - 1);
    v[static_cast<std::size_t>(j)] = val(t[static_cast<std::size_t>(j)]);
  }

  std::vector<double> out;
  if (v[0] <= v[1]) out.push_back(-1.0);
  for (std::size_t j = 1; j + 1 < t.size(); ++j) {
    if (!(v[j] <= v[j - 1] && v[j] <= v[j + 1])) continue;
    // q' changes sign from - to + inside [lo, hi].
    double lo = t[j - 1];
    double hi = t[j + 1];
    double x = t[j];
    for (int it = 0; it < 60; ++it) {
      const double g = d1(x);
      if (g < 0.0) lo = x; else hi = x;
      const double h = d2(x);
      double next = h > 0.0 ? x - g / h : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) <= 1e-15 * (1.0 + std::abs(x))) {
        x = next;
        break;
      }
      x = next;
    }
    if (val(x) > v[j]) x = t[j];
    out.push_back(x);
  }
  if (v[v.size() - 1] <= v[v.size() - 2]) out.push_back(1.0);
  return out;
}

namespace {

struct GridSolve {
  ProjectionResult proj;
  std::vector<double> grid;
};

GridSolve solve_on_grid(const std::vector<double>& grid, const Mat& drt, const LegendreBasis& basis,
                        const Vec& target, double tol) {
  std::vector<Vec> reps;
  reps.reserve(grid.size());
  for (double a : grid) reps.push_back(drt * basis.values(a));
  return {project_dual(reps, target, tol), grid};
}

std::vector<double> merged(const std::vector<double>& base, const std::vector<double>& extra) {
  std::vector<double> g = base;
  g.insert(g.end(), extra.begin(), extra.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end(), [](double a, double b) { return std::abs(a - b) <= 1e-14; }),
          g.end());
  return g;
}

double worst_violation(const LegendrePoly& q, int r) {
  double worst = std::numeric_limits<double>::infinity();
  for (double t : derivative_local_minima(q, r)) worst = std::min(worst, eval_poly(q, t, r));
  return worst;
}

struct Touch {
  double alpha;
  double rho;
  bool endpoint;
};

/// Newton on the touching-point system: with c = x + sum rho_j k_{alpha_j},
/// <k_{alpha_i}, c> = 0 for every i and <k'_{alpha_i}, c> = 0 at interior points.
std::optional<std::vector<Touch>> polish_touch_points(std::vector<Touch> touch, int n, int r,
                                                      const Vec& target) {
  const LegendreBasis basis(n);
  const Mat k0t = derivative_matrix(n, r).transpose();
  const Mat k1t = derivative_matrix(n, r + 1).transpose();
  const Mat k2t = derivative_matrix(n, r + 2).transpose();
  const auto m = static_cast<Index>(touch.size());

  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Index> interior;
    for (Index i = 0; i < m; ++i) {
      if (!touch[static_cast<std::size_t>(i)].endpoint) interior.push_back(i);
    }
    const auto mi = static_cast<Index>(interior.size());
    Mat k0(n + 1, m), k1(n + 1, m), k2(n + 1, m);
    Vec rho(m);
    for (Index i = 0; i < m; ++i) {
      const Vec b = basis.values(touch[static_cast<std::size_t>(i)].alpha);
      k0.col(i) = k0t * b;
      k1.col(i) = k1t * b;
      k2.col(i) = k2t * b;
      rho(i) = touch[static_cast<std::size_t>(i)].rho;
    }
    const Vec c = target + k0 * rho;

    Vec f(m + mi);
    Mat jac = Mat::Zero(m + mi, m + mi);
    for (Index i = 0; i < m; ++i) {
      f(i) = k0.col(i).dot(c);
      for (Index j = 0; j < m; ++j) jac(i, j) = k0.col(i).dot(k0.col(j));
      for (Index q = 0; q < mi; ++q) {
        const Index j = interior[static_cast<std::size_t>(q)];
        jac(i, m + q) = rho(j) * k0.col(i).dot(k1.col(j)) + (i == j ? k1.col(i).dot(c) : 0.0);
      }
    }
    for (Index p = 0; p < mi; ++p) {
      const Index i = interior[static_cast<std::size_t>(p)];
      f(m + p) = k1.col(i).dot(c);
      for (Index j = 0; j < m; ++j) jac(m + p, j) = k1.col(i).dot(k0.col(j));
      for (Index q = 0; q < mi; ++q) {
        const Index j = interior[static_cast<std::size_t>(q)];
        jac(m + p, m + q) = rho(j) * k1.col(i).dot(k1.col(j)) + (i == j ? k2.col(i).dot(c) : 0.0);
      }
    }
    const double fscale = 1.0 + target.norm() * (k0.size() ? k0.colwise().norm().maxCoeff() : 0.0);
    if (f.lpNorm<Eigen::Infinity>() <= 1e-14 * fscale) return touch;

    const Vec step = jac.colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) return std::nullopt;
    for (Index i = 0; i < m; ++i) touch[static_cast<std::size_t>(i)].rho += step(i);
    for (Index q = 0; q < mi; ++q) {
      double& a = touch[static_cast<std::size_t>(interior[static_cast<std::size_t>(q)])].alpha;
      a += step(m + q);
      if (!(a > -1.0 && a < 1.0)) return std::nullopt;
    }
    if (step.lpNorm<Eigen::Infinity>() <= 1e-15) return touch;
  }
  return std::nullopt;
}

/// Groups active points of an exchange solution that sit closer than `gap`.
std::vector<Touch> cluster_active(const GridSolve& sol, double gap) {
  std::vector<std::pair<double, double>> pts;
  for (Index i : sol.proj.active) pts.emplace_back(sol.grid[static_cast<std::size_t>(i)], sol.proj.rho(i));
  std::sort(pts.begin(), pts.end());
  std::vector<Touch> out;
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i + 1;
    while (j < pts.size() && pts[j].first - pts[j - 1].first <= gap) ++j;
    double wsum = 0.0;
    double asum = 0.0;
    bool endpoint = false;
    double ep = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      wsum += pts[k].second;
      asum += pts[k].second * pts[k].first;
      if (std::abs(pts[k].first) == 1.0) {
        endpoint = true;
        ep = pts[k].first;
      }
    }
    out.push_back({endpoint ? ep : asum / wsum, wsum, endpoint});
    i = j;
  }
  return out;
}

}  // namespace

ShapeResult project_shape(const ShapeProblem& problem, double tol) {
  problem.validate();
  const int n = problem.n;
  const int r = problem.r;
  const Mat dr = derivative_matrix(n, r);
  const Mat drt = dr.transpose();
  const LegendreBasis basis(n);
  const Vec& target = problem.target.coeffs;
  const double scale = tol * (1.0 + target.norm());

  ShapeResult out;
  GridSolve sol = solve_on_grid(problem.grid, drt, basis, target, tol);
  if (problem.refine) {
    std::vector<double> extra;
    constexpr int kMaxRounds = 40;
    for (int round = 0; round < kMaxRounds; ++round) {
      const LegendrePoly current{sol.proj.point};
      std::vector<double> low;
      for (double t : derivative_local_minima(current, r)) {
        if (eval_poly(current, t, r) < -scale) low.push_back(t);
      }
      if (low.empty()) break;
      // Inserted points that carry no multiplier are no longer needed.
      std::vector<double> keep;
      for (Index i : sol.proj.active) {
        const double a = sol.grid[static_cast<std::size_t>(i)];
        if (std::find(extra.begin(), extra.end(), a) != extra.end()) keep.push_back(a);
      }
      keep.insert(keep.end(), low.begin(), low.end());
      extra = std::move(keep);
      sol = solve_on_grid(merged(problem.grid, extra), drt, basis, target, tol);
      out.exchange_rounds = round + 1;
    }

    // Clusters of active points straddle a single touching point of the
    // continuum problem; solve for it directly and keep it if it verifies.
    double max_gap = 0.0;
    for (std::size_t i = 1; i < problem.grid.size(); ++i) {
      max_gap = std::max(max_gap, problem.grid[i] - problem.grid[i - 1]);
    }
    if (auto touch = polish_touch_points(cluster_active(sol, max_gap), n, r, target)) {
      std::vector<double> alphas;
      bool positive = true;
      for (const Touch& t : *touch) {
        alphas.push_back(t.alpha);
        positive = positive && t.rho > 0.0;
      }
      if (positive) {
        GridSolve polished = solve_on_grid(merged(problem.grid, alphas), drt, basis, target, tol);
        const double before = worst_violation(LegendrePoly{sol.proj.point}, r);
        const double after = worst_violation(LegendrePoly{polished.proj.point}, r);
        if (after >= std::min(before, -scale) &&
            polished.proj.active.size() <= sol.proj.active.size()) {
          sol = std::move(polished);
        }
      }
    }
  }
  const ProjectionResult& proj = sol.proj;
  out.grid_used = sol.grid;

  out.solution.coeffs = proj.point;
  out.distance = (target - proj.point).norm();
  const Vec deriv = dr * proj.point;
  out.derivative_norm = deriv.norm();

  for (Index i : proj.active) {
    const double a = sol.grid[static_cast<std::size_t>(i)];
    out.active_alphas.push_back(a);
    out.rho.push_back(proj.rho(i));
    out.max_active_derivative = std::max(out.max_active_derivative, std::abs(deriv.dot(basis.values(a))));
  }

  const int check = 10 * static_cast<int>(problem.grid.size());
  out.checkgrid.resize(static_cast<std::size_t>(check));
  out.min_derivative_on_checkgrid = std::numeric_limits<double>::infinity();
  for (int j = 0; j < check; ++j) {
    const double t = -1.0 + 2.0 * j / (check - 1);
    out.checkgrid[static_cast<std::size_t>(j)] = t;
    out.min_derivative_on_checkgrid = std::min(out.min_derivative_on_checkgrid, deriv.dot(basis.values(t)));
  }

  out.bound_applicable = out.derivative_norm > std::max(1e-8, scale);
  if (out.bound_applicable) {
    out.bound_ok = 2 * static_cast<int>(out.active_alphas.size()) <= n - r + 2;
  }
  return out;
}

}  // namespace conecert
