#include "reactid/time_stepping.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "reactid/kernels.hpp"
#include "reactid/problems.hpp"

namespace reactid {

TimeGrid::TimeGrid(double tau_, int steps_) : tau(tau_), steps(steps_) {
  if (!(tau > 0.0)) throw std::invalid_argument("TimeGrid: tau must be positive");
  if (steps < 1) throw std::invalid_argument("TimeGrid: need at least one step");
}

TimeGrid TimeGrid::for_horizon(double horizon, double tau) {
  if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("TimeGrid: tau must be positive");
  const double ratio = horizon / tau;
  const int steps = static_cast<int>(std::llround(ratio));
  if (steps < 1 || std::abs(steps * tau - horizon) > 1e-12 * horizon)
    throw std::invalid_argument("TimeGrid: tau does not divide the horizon");
  return TimeGrid(tau, steps);
}

SparseMatrix build_system_matrix(const SparseMatrix& K, const NodeField& m, const NodeField& c,
                                 double tau, double theta) {
  const std::size_t n = static_cast<std::size_t>(K.n);
  if (m.size() != n || c.size() != n)
    throw std::invalid_argument("build_system_matrix: size mismatch");
  if (!(tau > 0.0)) throw std::invalid_argument("build_system_matrix: tau must be positive");

  // Copy K's pattern and scale, then fold the diagonal in place. K always
  // stores its diagonal (every node belongs to some triangle).
  SparseMatrix A = K;
  if (theta != 1.0)
    for (double& v : A.values) v *= theta;
  for (int i = 0; i < A.n; ++i) {
    bool found = false;
    for (int p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p) {
      if (A.col_indices[p] == i) {
        A.values[p] += m[i] / tau + theta * c[i] * m[i];
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("build_system_matrix: missing diagonal entry");
  }
  return A;
}

NodeField step_implicit(const SparseMatrix& K, const NodeField& m, const NodeField& c,
                        const NodeField& w_n, const NodeField& load_next, double tau,
                        const SolveOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(K.n);
  if (w_n.size() != n || load_next.size() != n)
    throw std::invalid_argument("step_implicit: size mismatch");
  const SparseMatrix A = build_system_matrix(K, m, c, tau, 1.0);
  NodeField rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = m[i] / tau * w_n[i] + load_next[i];
  NodeField x0 = w_n;
  return solve_spd(A, rhs, opts, nullptr, &x0);
}

namespace {

void record_step_stats(ForwardSolution& sol, const NodeField& w, const NodeField* prev) {
  sol.step_min.push_back(kernels::min_value(w));
  sol.step_max.push_back(kernels::max_value(w));
  if (prev) sol.step_increment_min.push_back(kernels::min_difference(w, *prev));
}

}  // namespace

ForwardSolution solve_forward_assembled(const Mesh& mesh, const SparseMatrix& K,
                                        const NodeField& m, const NodeField& c,
                                        const SourceSpec& source, const TimeGrid& grid,
                                        const ForwardOptions& opts) {
  const std::size_t n = mesh.node_count();
  if (static_cast<std::size_t>(K.n) != n || m.size() != n || c.size() != n)
    throw std::invalid_argument("solve_forward: size mismatch");
  const double theta = opts.theta;
  if (theta != 1.0 && theta != 0.5)
    throw std::invalid_argument("solve_forward: theta must be 1 or 1/2");

  const SparseMatrix A = build_system_matrix(K, m, c, grid.tau, theta);

  // Separable load: F_n = time_factor(t_n) * (m .* spatial_profile).
  NodeField spatial(n);
  for (std::size_t i = 0; i < n; ++i)
    spatial[i] = m[i] * source.spatial_profile(mesh.nodes[i][0], mesh.nodes[i][1]);

  ForwardSolution sol;
  NodeField w(n, 0.0);
  NodeField w_prev(n, 0.0);
  record_step_stats(sol, w, nullptr);
  if (opts.keep_trajectory) sol.trajectory.push_back(w);

  NodeField rhs(n), Kw(n), x0(n);
  for (int step = 0; step < grid.steps; ++step) {
    const double t_now = grid.time_at(step);
    const double t_next = grid.time_at(step + 1);
    const double f_now = source.time_factor(t_now);
    const double f_next = source.time_factor(t_next);

    if (theta == 1.0) {
      for (std::size_t i = 0; i < n; ++i)
        rhs[i] = m[i] / grid.tau * w[i] + f_next * spatial[i];
    } else {
      kernels::matvec(K, w, Kw);
      for (std::size_t i = 0; i < n; ++i)
        rhs[i] = m[i] / grid.tau * w[i] - (1.0 - theta) * (Kw[i] + c[i] * m[i] * w[i]) +
                 theta * f_next * spatial[i] + (1.0 - theta) * f_now * spatial[i];
    }

    w_prev = w;
    x0 = w;  // warm start from the previous level
    SolveReport report;
    w = solve_spd(A, rhs, opts.linear, &report, &x0);
    sol.total_cg_iterations += report.iterations;

    record_step_stats(sol, w, &w_prev);
    if (opts.keep_trajectory) sol.trajectory.push_back(w);
  }

  sol.final = std::move(w);
  sol.penultimate = std::move(w_prev);
  sol.time_derivative_at_T.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    sol.time_derivative_at_T[i] = (sol.final[i] - sol.penultimate[i]) / grid.tau;

  if (source.satisfies_monotone_hypothesis()) {
    double scale = 0.0;
    for (double v : sol.step_max) scale = std::max(scale, std::abs(v));
    for (double v : sol.step_min) scale = std::max(scale, std::abs(v));
    const double tol = -1e-10 * scale;
    for (double v : sol.step_min)
      if (v < tol) sol.dmp_violation = true;
    for (double v : sol.step_increment_min)
      if (v < tol) sol.dmp_violation = true;
  }
  return sol;
}

ForwardSolution solve_forward(const Mesh& mesh, const CoefficientSpec& coeff, const NodeField& c,
                              const SourceSpec& source, const TimeGrid& grid,
                              const ForwardOptions& opts) {
  const SparseMatrix K = assemble_stiffness(mesh, coeff);
  const NodeField m = assemble_lumped_mass(mesh);
  return solve_forward_assembled(mesh, K, m, c, source, grid, opts);
}

MonotonicityReport check_discrete_monotonicity(const ForwardSolution& sol) {
  MonotonicityReport rep;
  if (sol.step_min.empty()) throw std::invalid_argument("check_discrete_monotonicity: empty solve");
  rep.min_value = sol.step_min[0];
  for (double v : sol.step_min) rep.min_value = std::min(rep.min_value, v);
  rep.min_increment = sol.step_increment_min.empty() ? 0.0 : sol.step_increment_min[0];
  for (double v : sol.step_increment_min) rep.min_increment = std::min(rep.min_increment, v);
  return rep;
}

}  // namespace reactid
