#include <algorithm>
#include <cmath>

#include "conecert/cli.hpp"
#include "conecert/cone.hpp"
#include "conecert/farkas.hpp"
#include "conecert/legendre.hpp"
#include "conecert/linalg.hpp"
#include "conecert/nnls.hpp"
#include "conecert/quadrature.hpp"
#include "conecert/shape.hpp"

namespace conecert::cli {
namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

/// Schema access with diagnostics that point at the offending key.
class Reader {
 public:
  Reader(const Json& j, const std::string& text) : j_(j), text_(text) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const int line = line_of_key(text_, key);
    throw InputError("field '" + key + "': " + what, line == 0 ? 1 : line);
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& at(const std::string& key) const {
    if (!j_.contains(key)) fail(key, "missing");
    return j_.at(key);
  }

  double number(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "not finite");
    return d;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<int>();
  }

  int integer_or(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

  bool boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
  }

  std::string string_or(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  Vec vec_of(const std::string& key, const Json& v) const {
    if (!v.is_array()) fail(key, "expected an array of numbers");
    Vec out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(key, "entry " + std::to_string(i) + " is not a number");
      out(static_cast<Index>(i)) = v[i].get<double>();
      if (!std::isfinite(out(static_cast<Index>(i)))) fail(key, "entry " + std::to_string(i) + " is not finite");
    }
    return out;
  }

  Vec vec(const std::string& key) const { return vec_of(key, at(key)); }

  /// Array of rows; every row must have `cols` entries (or agree with the first row when cols < 0).
  std::vector<Vec> rows(const std::string& key, Index cols = -1) const {
    const Json& v = at(key);
    if (!v.is_array()) fail(key, "expected an array of rows");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Vec row = vec_of(key, v[i]);
      if (cols < 0) cols = row.size();
      if (row.size() != cols) {
        fail(key, "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                      " entries, expected " + std::to_string(cols));
      }
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  const Json& j_;
  const std::string& text_;
};

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

template <class T>
Json to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(e);
  return a;
}

void add(Report& rep, const std::string& name, double residual, bool pass) {
  rep.certificates.push_back({name, residual, pass});
}

void add_checks(Report& rep, const CertificateReport& cert, const std::string& prefix = "") {
  for (const auto& c : cert.checks) add(rep, prefix + c.name, c.residual, c.pass);
}

double tolerance(const Reader& in, const Options& opts) {
  if (opts.tol > 0.0) return opts.tol;
  const double t = in.number_or("tol", kDefaultTol);
  if (!(t > 0.0)) in.fail("tol", "must be positive");
  return t;
}

Report solve_project(const Reader& in, const Options& opts) {
  const double tol = tolerance(in, opts);
  const Vec x = in.vec("x");
  const std::vector<Vec> gens = in.rows("generators", x.size());
  const std::string orientation = in.string_or("orientation", "dual");
  if (orientation != "dual" && orientation != "generated") {
    in.fail("orientation", "expected \"dual\" or \"generated\"");
  }
  std::optional<Vec> e;
  if (in.has("witness_e")) {
    e = in.vec("witness_e");
    if (e->size() != x.size()) in.fail("witness_e", "dimension differs from x");
  }

  Report rep;
  const Mat s = synthesis_matrix(gens, x.size());
  if (orientation == "dual") {
    const ProjectionResult p = project_dual(gens, x, tol);
    rep.result["orientation"] = "dual";
    rep.result["point"] = to_json(p.point);
    rep.result["rho"] = to_json(p.rho);
    rep.result["active"] = to_json(p.active);
    rep.result["orthogonality_residual"] = p.orthogonality_residual;
    add_checks(rep, verify_characterization(gens, x, p.point, tol, e));
    add(rep, "nnls_kkt", kkt_violation(s, -x, p.rho), kkt_violation(s, -x, p.rho) <= tol);
  } else {
    const ProjectionResult p = project_generated(gens, x, tol);
    rep.result["orientation"] = "generated";
    rep.result["point"] = to_json(p.point);
    rep.result["rho"] = to_json(p.rho);
    rep.result["active"] = to_json(p.active);
    rep.result["orthogonality_residual"] = p.orthogonality_residual;
    const Vec pdual = x - p.point;
    rep.result["polar_component"] = to_json(pdual);
    const double kkt = kkt_violation(s, x, p.rho);
    add(rep, "nnls_kkt", kkt, kkt <= tol);
    const double xs = 1.0 + x.norm();
    const double orth = std::abs(p.point.dot(pdual)) / (xs * xs);
    add(rep, "moreau_orthogonal", orth, orth <= tol);
    const double rep_miss = (s * p.rho - p.point).norm() / xs;
    const bool rho_ok = p.rho.size() == 0 || p.rho.minCoeff() >= 0.0;
    add(rep, "point_in_cone", rep_miss, rep_miss <= tol && rho_ok);
    double polar = 0.0;
    for (Index i = 0; i < s.cols(); ++i) {
      const double kn = s.col(i).norm();
      if (kn > 0.0) polar = std::max(polar, std::max(pdual.dot(s.col(i)), 0.0) / (xs * kn));
    }
    add(rep, "polar_in_dual_cone", polar, polar <= tol);
  }
  return rep;
}

Report solve_membership(const Reader& in, const Options& opts) {
  const double tol = tolerance(in, opts);
  const Vec x = in.vec("x");
  const std::vector<Vec> gens = in.rows("generators", x.size());
  const std::string mode = in.string_or("mode", "cone");
  const double xs = 1.0 + x.norm();
  Report rep;
  rep.result["mode"] = mode;
  if (mode == "span") {
    const SpanMembership sm = span_membership(x, gens, tol);
    rep.result["member"] = sm.member;
    if (sm.coefficients) rep.result["coefficients"] = to_json(*sm.coefficients);
    rep.result["residual"] = to_json(sm.residual);
    if (sm.member) {
      const double miss = sm.residual.norm() / xs;
      add(rep, "combination_reproduces_x", miss, miss <= tol);
    } else {
      double worst = 0.0;
      for (const Vec& g : gens) worst = std::max(worst, std::abs(g.dot(sm.residual)));
      worst /= xs;
      add(rep, "witness_orthogonal", worst, worst <= tol);
      const double gap = x.dot(sm.residual);
      add(rep, "witness_separates", gap, gap > 0.0);
    }
  } else if (mode == "cone") {
    const PositiveRelative pr = positive_relative_test(gens, x, tol);
    rep.result["member"] = pr.positive;
    if (pr.positive) {
      rep.result["rho"] = to_json(*pr.rho);
      const Mat s = synthesis_matrix(gens, x.size());
      const double miss = (s * *pr.rho - x).norm() / xs;
      const bool nonneg = pr.rho->size() == 0 || pr.rho->minCoeff() >= 0.0;
      add(rep, "combination_reproduces_x", miss, miss <= tol && nonneg);
    } else {
      const Vec& w = *pr.witness;
      rep.result["witness"] = to_json(w);
      double worst = 0.0;
      for (const Vec& g : gens) {
        const double gn = g.norm();
        if (gn > 0.0) worst = std::max(worst, std::max(g.dot(w), 0.0) / (xs * gn));
      }
      add(rep, "witness_nonpositive_on_generators", worst, worst <= tol);
      const double gap = x.dot(w);
      add(rep, "witness_separates", gap, gap > 0.0);
    }
  } else {
    in.fail("mode", "expected \"cone\" or \"span\"");
  }
  return rep;
}

Report solve_farkas(const Reader& in, const Options& opts) {
  const double tol = tolerance(in, opts);
  const std::string mode = in.string_or("mode", "alternative");
  Report rep;
  rep.result["mode"] = mode;
  if (mode == "alternative") {
    const Vec b = in.vec("b");
    const std::vector<Vec> rows = in.rows("A", b.size());
    Mat a(static_cast<Index>(rows.size()), b.size());
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Index>(i)) = rows[i].transpose();
    const FarkasOutcome o = farkas_alternative(a, b, tol);
    rep.result["system"] = o.tag == FarkasSystem::System1 ? "System1" : "System2";
    if (o.y) rep.result["y"] = to_json(*o.y);
    if (o.x) rep.result["x"] = to_json(*o.x);
    rep.result["primal_residual"] = o.verification.primal_residual;
    rep.result["dual_violation"] = o.verification.dual_violation;
    rep.result["strict_gap"] = o.verification.strict_gap;
    const bool ok = verify_outcome(a, b, o, tol);
    add(rep, o.tag == FarkasSystem::System1 ? "system1_certificate" : "system2_certificate",
        o.verification.primal_residual, ok);
    FarkasOutcome swapped = o;
    swapped.tag = o.tag == FarkasSystem::System1 ? FarkasSystem::System2 : FarkasSystem::System1;
    add(rep, "other_system_rejected", 0.0, !verify_outcome(a, b, swapped, tol));
  } else if (mode == "generalized") {
    const Vec b = in.vec("b");
    const double r = in.number("r");
    const Json& pj = in.at("pairs");
    if (!pj.is_array()) in.fail("pairs", "expected an array of {\"s\": [...], \"p\": number}");
    std::vector<HalfSpace> pairs;
    for (const auto& e : pj) {
      if (!e.is_object() || !e.contains("s") || !e.contains("p") || !e["p"].is_number()) {
        in.fail("pairs", "each entry needs \"s\" (array) and \"p\" (number)");
      }
      Vec s = in.vec_of("pairs", e["s"]);
      if (s.size() != b.size()) in.fail("pairs", "s has dimension " + std::to_string(s.size()) + ", expected " + std::to_string(b.size()));
      pairs.emplace_back(std::move(s), e["p"].get<double>());
    }
    const int samples = in.integer_or("samples", 100);
    const GenFarkasReport g = generalized_farkas(pairs, b, r, tol, opts.seed, samples);
    rep.result["member_plain"] = g.member_plain;
    rep.result["member_augmented"] = g.member_augmented;
    rep.result["sampled_implication_holds"] = g.sampled_implication_holds;
    rep.result["hypothesis_verified"] = g.hypothesis_verified;
    rep.result["samples_checked"] = g.samples_checked;
    if (g.feasible_point) rep.result["feasible_point"] = to_json(*g.feasible_point);
    if (g.violating_point) rep.result["violating_point"] = to_json(*g.violating_point);
    add(rep, "plain_implies_augmented", 0.0, !g.member_plain || g.member_augmented);
    add(rep, "feasibility_hypothesis", 0.0, g.hypothesis_verified);
    // A certified membership must not be contradicted by a sampled feasible point.
    add(rep, "samples_consistent_with_membership", 0.0,
        !g.member_augmented || g.sampled_implication_holds);
  } else {
    in.fail("mode", "expected \"alternative\" or \"generalized\"");
  }
  return rep;
}

Report solve_quadrature(const Reader& in) {
  const int n = in.integer("n");
  if (n < 0) in.fail("n", "must be nonnegative");
  Interval iv{-1.0, 1.0};
  if (in.has("interval")) {
    const Vec v = in.vec("interval");
    if (v.size() != 2) in.fail("interval", "expected [a, b]");
    iv = {v(0), v(1)};
    if (!(iv.a < iv.b)) in.fail("interval", "need a < b");
  }
  const int grid = in.integer_or("grid_size", std::max(64, 8 * (n + 1)));
  if (grid < 4 * (n + 1)) in.fail("grid_size", "must be at least 4 (n + 1)");

  const QuadratureRule rule = positive_quadrature(integral_moments(n, iv.a, iv.b), grid);
  Report rep;
  rep.result["degree"] = n;
  rep.result["interval"] = Json::array({iv.a, iv.b});
  rep.result["nodes"] = to_json(rule.nodes);
  rep.result["weights"] = to_json(rule.weights);

  add(rep, "node_count", static_cast<double>(rule.size()), static_cast<int>(rule.size()) <= n + 1);
  const double wmin = rule.weights.empty() ? 0.0 : *std::min_element(rule.weights.begin(), rule.weights.end());
  add(rep, "weights_positive", wmin, !rule.weights.empty() && wmin > 1e-12);
  bool inside = std::is_sorted(rule.nodes.begin(), rule.nodes.end());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    inside = inside && rule.nodes[i] >= iv.a && rule.nodes[i] <= iv.b &&
             (i == 0 || rule.nodes[i] > rule.nodes[i - 1]);
  }
  add(rep, "nodes_increasing_in_interval", 0.0, inside);
  const double err = verify_exactness(rule, n);
  add(rep, "basis_exactness", err, err <= 1e-8);

  Json table = Json::array();
  for (int k = 0; k <= n; ++k) {
    const double approx = apply_rule(rule, [&](double t) { return std::pow(t, k); });
    const double exact = (std::pow(iv.b, k + 1) - std::pow(iv.a, k + 1)) / (k + 1);
    table.push_back(Json::array({k, approx, exact}));
  }
  rep.result["monomial_table"] = std::move(table);
  return rep;
}

Report solve_shape(const Reader& in, const Options& opts) {
  const double tol = tolerance(in, opts);
  ShapeProblem p;
  p.n = in.integer("n");
  p.r = in.integer("r");
  if (p.n < 1) in.fail("n", "must be at least 1");
  if (p.r < 0 || p.r > p.n) in.fail("r", "need 0 <= r <= n");
  if (in.has("target_legendre")) {
    p.target.coeffs = in.vec("target_legendre");
    if (p.target.coeffs.size() != p.n + 1) in.fail("target_legendre", "expected n + 1 coefficients");
  } else if (in.has("target_monomial")) {
    const Vec m = in.vec("target_monomial");
    if (m.size() > p.n + 1) in.fail("target_monomial", "degree exceeds n");
    p.target = from_monomials(std::vector<double>(m.data(), m.data() + m.size()), p.n);
  } else {
    in.fail("target_legendre", "one of target_legendre or target_monomial is required");
  }
  const int grid = in.integer_or("grid_size", 20 * (p.n + 1));
  if (grid < p.n + 1) in.fail("grid_size", "must be at least n + 1");
  p.grid = chebyshev_grid(grid);
  p.refine = in.boolean_or("refine", true);

  const ShapeResult s = project_shape(p, tol);
  Report rep;
  rep.result["n"] = p.n;
  rep.result["r"] = p.r;
  rep.result["solution_legendre"] = to_json(s.solution.coeffs);
  rep.result["active_alphas"] = to_json(s.active_alphas);
  rep.result["rho"] = to_json(s.rho);
  rep.result["distance"] = s.distance;
  rep.result["min_derivative_on_checkgrid"] = s.min_derivative_on_checkgrid;
  rep.result["exchange_rounds"] = s.exchange_rounds;
  rep.result["bound_applicable"] = s.bound_applicable;

  const double scale = tol * (1.0 + p.target.norm());
  add(rep, "derivative_nonnegative_on_checkgrid", s.min_derivative_on_checkgrid,
      s.min_derivative_on_checkgrid >= -std::max(tol, scale));
  add(rep, "active_points_touch", s.max_active_derivative, s.max_active_derivative <= scale);
  const bool rho_pos = std::all_of(s.rho.begin(), s.rho.end(), [](double v) { return v > 0.0; });
  add(rep, "multipliers_positive", s.rho.empty() ? 0.0 : *std::min_element(s.rho.begin(), s.rho.end()), rho_pos);

  // Independent recheck of the characterization: x0 - x = sum rho_i k_alpha_i.
  Vec recon = p.target.coeffs;
  for (std::size_t i = 0; i < s.active_alphas.size(); ++i) {
    recon += s.rho[i] * representer(p.n, p.r, s.active_alphas[i]).coeffs;
  }
  const double miss = (recon - s.solution.coeffs).norm() / (1.0 + p.target.norm());
  add(rep, "representer_expansion", miss, miss <= tol);
  std::vector<Vec> reps;
  for (double a : s.active_alphas) reps.push_back(representer(p.n, p.r, a).coeffs);
  const Index m = static_cast<Index>(reps.size());
  const bool independent = m == 0 || numerical_rank(synthesis_matrix(reps, p.n + 1)) == m;
  add(rep, "active_independent", static_cast<double>(m), independent);
  if (s.bound_applicable) add(rep, "zero_count_bound", static_cast<double>(m), s.bound_ok);

  Json samples = Json::array();
  for (double t : s.checkgrid) {
    samples.push_back(Json::array({t, eval_poly(p.target, t, 0), eval_poly(s.solution, t, 0),
                                   eval_poly(s.solution, t, p.r)}));
  }
  rep.result["samples"] = std::move(samples);
  return rep;
}

}  // namespace

Json parse_problem_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

Report solve(const std::string& kind, const Json& problem, const Options& opts, const std::string& text) {
  if (!problem.is_object()) throw InputError("problem file must contain a JSON object", 1);
  const Reader in(problem, text);
  const std::string declared = in.string_or("kind", kind);
  if (declared != kind) in.fail("kind", "file declares '" + declared + "' but subcommand is '" + kind + "'");

  Report rep;
  try {
    if (kind == "project") rep = solve_project(in, opts);
    else if (kind == "membership") rep = solve_membership(in, opts);
    else if (kind == "farkas") rep = solve_farkas(in, opts);
    else if (kind == "quadrature") rep = solve_quadrature(in);
    else if (kind == "shape") rep = solve_shape(in, opts);
    else throw InputError("unknown kind '" + kind + "'", 0);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what(), 1);
  } catch (const Json::exception& e) {
    throw InputError(e.what(), 1);
  }
  rep.kind = kind;
  rep.input_echo = problem;
  return rep;
}

}  // namespace conecert::cli
