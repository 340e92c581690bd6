#include "conecert/cone.hpp"

#include <algorithm>
#include <cmath>

#include "conecert/caratheodory.hpp"
#include "conecert/linalg.hpp"
#include "conecert/nnls.hpp"

namespace conecert {
namespace {

Mat checked_synthesis(std::span<const Vec> generators, const Vec& x) {
  const Mat s = synthesis_matrix(generators, x.size());
  if (!s.allFinite() || !x.allFinite()) throw std::invalid_argument("non-finite input");
  return s;
}

double active_threshold(const Vec& rho) {
  const double big = rho.size() ? rho.lpNorm<Eigen::Infinity>() : 0.0;
  return 1e-10 * std::max(1.0, big);
}

/// Moves rho onto an independent support without changing S rho.
void reduce_support(const Mat& s, Vec& rho, std::vector<Index>& active) {
  const CaratheodoryResult red = caratheodory_reduce(s, rho);
  rho.setZero();
  for (std::size_t k = 0; k < red.indices.size(); ++k) rho(red.indices[k]) = red.weights(static_cast<Index>(k));
  const double thr = active_threshold(rho);
  active.clear();
  for (Index i = 0; i < rho.size(); ++i) {
    if (rho(i) > thr) active.push_back(i);
  }
}

}  // namespace

void ConeSpec::validate(Index dim) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != dim) {
      throw std::invalid_argument("generator " + std::to_string(i) + " has dimension " +
                                  std::to_string(generators[i].size()) + ", expected " +
                                  std::to_string(dim));
    }
    if (!generators[i].allFinite()) {
      throw std::invalid_argument("generator " + std::to_string(i) + " is not finite");
    }
  }
  if (witness_e) {
    if (witness_e->size() != dim || !witness_e->allFinite()) {
      throw std::invalid_argument("witness_e must be a finite vector of the cone dimension");
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (!(generators[i].dot(*witness_e) > 0.0)) {
        throw std::invalid_argument("witness_e is not strictly positive on generator " +
                                    std::to_string(i));
      }
    }
  }
}

bool contains(const ConeSpec& cone, const Vec& x, double tol) {
  cone.validate(x.size());
  const double scale = tol * (1.0 + x.norm());
  if (cone.orientation == Orientation::DualForm) {
    return std::all_of(cone.generators.begin(), cone.generators.end(),
                       [&](const Vec& k) { return x.dot(k) >= -scale; });
  }
  const Mat s = synthesis_matrix(cone.generators, x.size());
  return nnls(s, x, tol).residual.norm() <= scale;
}

PositiveRelative positive_relative_test(std::span<const Vec> gamma, const Vec& x, double tol) {
  const Mat s = checked_synthesis(gamma, x);
  NnlsResult fit = nnls(s, x, tol);
  PositiveRelative out;
  out.positive = fit.residual.norm() <= tol * (1.0 + x.norm());
  if (out.positive) {
    out.rho = std::move(fit.rho);
  } else {
    out.witness = std::move(fit.residual);
  }
  return out;
}

ProjectionResult project_generated(std::span<const Vec> generators, const Vec& x, double tol) {
  const Mat s = checked_synthesis(generators, x);
  NnlsResult fit = nnls(s, x, tol);
  ProjectionResult out;
  out.rho = std::move(fit.rho);
  reduce_support(s, out.rho, out.active);
  out.point = s * out.rho;
  out.kkt_residual = kkt_violation(s, x, out.rho);
  out.orthogonality_residual = std::abs((x - out.point).dot(out.point));
  return out;
}

ProjectionResult project_dual(std::span<const Vec> generators, const Vec& x, double tol) {
  ProjectionResult out = project_generated(generators, -x, tol);
  out.point = x + out.point;
  out.orthogonality_residual = std::abs((x - out.point).dot(out.point));
  return out;
}

ProjectionResult project_orthonormal(std::span<const Vec> generators, const Vec& x) {
  const Mat s = checked_synthesis(generators, x);
  const Mat gram = s.transpose() * s;
  const double dev =
      (gram - Mat::Identity(s.cols(), s.cols())).cwiseAbs().maxCoeff();
  if (s.cols() > 0 && dev > 1e-8) {
    throw NotOrthonormal("generators deviate from orthonormal by " + std::to_string(dev));
  }
  ProjectionResult out;
  out.rho = (-(s.transpose() * x)).cwiseMax(0.0);
  out.point = x + s * out.rho;
  const double thr = active_threshold(out.rho);
  for (Index i = 0; i < out.rho.size(); ++i) {
    if (out.rho(i) > thr) out.active.push_back(i);
  }
  out.kkt_residual = kkt_violation(s, -x, out.rho);
  out.orthogonality_residual = std::abs((x - out.point).dot(out.point));
  return out;
}

MoreauSplit moreau_decompose(std::span<const Vec> generators, const Vec& x, double tol) {
  MoreauSplit out;
  out.pc = project_generated(generators, x, tol).point;
  out.pdual = x - out.pc;
  return out;
}

bool CertificateReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.pass; });
}

const CertificateCheck* CertificateReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

CertificateReport verify_characterization(std::span<const Vec> generators, const Vec& x,
                                          const Vec& x0, double tol,
                                          const std::optional<Vec>& witness_e) {
  const Mat s = checked_synthesis(generators, x);
  if (x0.size() != x.size()) throw std::invalid_argument("x0 and x differ in dimension");
  const Index d = x.size();
  const Index m_all = s.cols();
  const double xs = 1.0 + x.norm();
  Vec colnorm(m_all);
  for (Index i = 0; i < m_all; ++i) colnorm(i) = std::max(s.col(i).norm(), 1e-300);

  CertificateReport rep;
  if (witness_e) {
    double worst = m_all ? (s.transpose() * *witness_e).minCoeff() : 1.0;
    rep.checks.push_back({"hypothesis_e_positive", worst > 0.0, worst});
  }

  const Vec gx = s.transpose() * x;
  const bool x_feasible = m_all == 0 || ((-gx).cwiseQuotient(colnorm).maxCoeff() <= tol * xs);
  if (x_feasible) {
    rep.trivial_feasible = true;
    const double miss = (x0 - x).norm() / xs;
    rep.checks.push_back({"x0_equals_x", miss <= tol, miss});
    return rep;
  }

  const Vec g0 = s.transpose() * x0;
  const Vec diff = x0 - x;

  // Prefer a representation over the generators that are tight at x0.
  std::vector<Index> tight;
  for (Index i = 0; i < m_all; ++i) {
    if (std::abs(g0(i)) <= tol * xs * colnorm(i)) tight.push_back(i);
  }
  Vec rho = Vec::Zero(m_all);
  {
    Mat st(d, static_cast<Index>(tight.size()));
    for (std::size_t k = 0; k < tight.size(); ++k) st.col(static_cast<Index>(k)) = s.col(tight[k]);
    const NnlsResult fit = nnls(st, diff, tol);
    if (fit.residual.norm() <= tol * xs) {
      for (std::size_t k = 0; k < tight.size(); ++k) rho(tight[k]) = fit.rho(static_cast<Index>(k));
    } else {
      rho = nnls(s, diff, tol).rho;
    }
  }
  reduce_support(s, rho, rep.active);
  const auto m = static_cast<Index>(rep.active.size());
  rep.active_count = m;
  rep.rho = Vec(m);
  Mat sa(d, m);
  for (Index k = 0; k < m; ++k) {
    rep.rho(k) = rho(rep.active[static_cast<std::size_t>(k)]);
    sa.col(k) = s.col(rep.active[static_cast<std::size_t>(k)]);
  }

  {
    const double miss = (diff - sa * rep.rho).norm() / xs;
    const bool independent = numerical_rank(sa) == m;
    const bool positive = m == 0 || rep.rho.minCoeff() > 0.0;
    rep.checks.push_back({"x0_minus_x_in_cone", miss <= tol && independent && positive && m >= 1, miss});
  }
  {
    double worst = 0.0;
    for (Index i : rep.active) worst = std::max(worst, std::abs(g0(i)) / (xs * colnorm(i)));
    rep.checks.push_back({"active_orthogonal", worst <= tol, worst});
  }
  {
    double worst = 0.0;
    for (Index i = 0; i < m_all; ++i) worst = std::max(worst, std::max(-g0(i), 0.0) / (xs * colnorm(i)));
    rep.checks.push_back({"x0_feasible", worst <= tol, worst});
  }
  {
    const bool nonzero = x0.norm() > tol * xs;
    const Index bound = nonzero ? d - 1 : d;
    rep.checks.push_back({"count_bound", m >= 1 && m <= bound, static_cast<double>(m)});
  }
  {
    const double lowest = gx.minCoeff();
    rep.checks.push_back({"some_negative_inner", lowest < 0.0, lowest});
  }
  return rep;
}

DualDecomposition dual_cone_decompose(std::span<const Vec> generators, const Vec& y, double tol) {
  const Mat s = checked_synthesis(generators, y);
  const Vec g = s.transpose() * y;
  const double ys = 1.0 + y.norm();
  for (Index i = 0; i < g.size(); ++i) {
    if (g(i) > tol * ys * s.col(i).norm()) {
      throw NotInDualCone("<y, k_" + std::to_string(i) + "> = " + std::to_string(g(i)) +
                          " is positive");
    }
  }
  const Mat st_pinv = pseudoinverse(s.transpose());
  DualDecomposition out;
  out.eta = (-g).cwiseMax(0.0);
  out.z = -(st_pinv * out.eta);
  out.nu = y - out.z;
  out.x0 = y - st_pinv * (s.transpose() * y);
  return out;
}

ZigDecomposition zig_decompose(std::span<const Vec> generators, const Vec& x, double tol) {
  const Mat s = checked_synthesis(generators, x);
  const ProjectionResult proj = project_generated(generators, x, tol);
  const Mat st_pinv = pseudoinverse(s.transpose());
  ZigDecomposition out;
  out.rho = proj.rho;
  out.pc = proj.point;
  out.pdual = x - out.pc;
  out.x0 = x - st_pinv * (s.transpose() * x);
  out.eta = (-(s.transpose() * out.pdual)).cwiseMax(0.0);
  return out;
}

CertificateReport verify_zig(std::span<const Vec> generators, const Vec& x,
                             const ZigDecomposition& zig, double tol) {
  const Mat s = checked_synthesis(generators, x);
  const Mat st_pinv = pseudoinverse(s.transpose());
  const Mat null_s = null_space_projector(s);
  const double xs = 1.0 + x.norm();
  const double xs2 = 1.0 + x.squaredNorm();
  const double ks = 1.0 + (s.size() ? s.norm() : 0.0);
  const Vec back = st_pinv * zig.eta;

  CertificateReport rep;
  auto add = [&](const char* name, double residual) {
    rep.checks.push_back({name, residual <= tol, residual});
  };
  add("decomposition_identity", (s * zig.rho + zig.x0 - back - x).norm() / xs);
  add("x0_in_null_adjoint", (s.transpose() * zig.x0).norm() / (xs * ks));
  {
    double neg = 0.0;
    if (zig.rho.size()) neg = std::max(neg, -zig.rho.minCoeff() / xs);
    if (zig.eta.size()) neg = std::max(neg, -zig.eta.minCoeff() / (xs * ks));
    add("rho_eta_nonnegative", neg);
  }
  add("eta_in_null_perp", (null_s * zig.eta).norm() / (xs * ks));
  add("rho_eta_orthogonal", std::abs(zig.rho.dot(zig.eta)) / xs2);
  add("polar_projection_formula", (zig.pdual - (zig.x0 - back)).norm() / xs);
  add("x0_orthogonal", std::abs(zig.x0.dot(back)) / xs2);
  add("projection_kkt", kkt_violation(s, x, zig.rho));
  add("primal_formulas_agree",
      (s * zig.rho - st_pinv * (s.transpose() * x + zig.eta)).norm() / xs);
  rep.active_count = 0;
  for (Index i = 0; i < zig.rho.size(); ++i) {
    if (zig.rho(i) > 0.0) ++rep.active_count;
  }
  return rep;
}

}  // namespace conecert
