#include "reactid/identification.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "reactid/assembly.hpp"
#include "reactid/kernels.hpp"

namespace reactid {

namespace {

std::string floor_message(int node, double value, double floor) {
  return "data value " + std::to_string(value) + " at node " + std::to_string(node) +
         " is below the admissible floor " + std::to_string(floor);
}

void require_above_floor(const NodeField& psi, double floor) {
  if (!(floor > 0.0)) {
    // A nonpositive floor means max psi <= 0 under the relative default:
    // the data are unusable everywhere. Report the smallest node.
    int worst = 0;
    for (std::size_t i = 1; i < psi.size(); ++i)
      if (psi[i] < psi[worst]) worst = static_cast<int>(i);
    throw PsiFloorError(worst, psi.empty() ? 0.0 : psi[worst], floor);
  }
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (!(psi[i] >= floor)) throw PsiFloorError(static_cast<int>(i), psi[i], floor);
}

/// Shared core of the initial guess and the update: both divide a nodal
/// residual by psi, differing only in the time-derivative term.
NodeField coefficient_from_balance(const Mesh& mesh, const SparseMatrix& K, const NodeField& m,
                                   const NodeField& psi, const NodeField& f_T,
                                   const NodeField* dw_dt, double psi_floor) {
  const std::size_t n = mesh.node_count();
  if (static_cast<std::size_t>(K.n) != n || m.size() != n || psi.size() != n || f_T.size() != n)
    throw std::invalid_argument("coefficient update: size mismatch");
  if (dw_dt && dw_dt->size() != n)
    throw std::invalid_argument("coefficient update: forward solution from a different mesh");
  require_above_floor(psi, psi_floor);

  NodeField Kpsi(n);
  kernels::matvec(K, psi, Kpsi);
  NodeField c(n);
  for (std::size_t i = 0; i < n; ++i) {
    double numerator = f_T[i] - Kpsi[i] / m[i];
    if (dw_dt) numerator -= (*dw_dt)[i];
    c[i] = numerator / psi[i];
  }
  return c;
}

}  // namespace

PsiFloorError::PsiFloorError(int node_, double value, double floor)
    : std::runtime_error(floor_message(node_, value, floor)), node(node_) {}

NodeField initial_coefficient_from_above(const Mesh& mesh, const SparseMatrix& K,
                                         const NodeField& m, const NodeField& psi,
                                         const NodeField& f_T, double psi_floor) {
  return coefficient_from_balance(mesh, K, m, psi, f_T, nullptr, psi_floor);
}

NodeField update_coefficient(const Mesh& mesh, const SparseMatrix& K, const NodeField& m,
                             const NodeField& psi, const NodeField& f_T,
                             const ForwardSolution& sol, double psi_floor) {
  return coefficient_from_balance(mesh, K, m, psi, f_T, &sol.time_derivative_at_T, psi_floor);
}

ErrorNorms error_norms(const NodeField& c_k, const NodeField& c_true, const NodeField& m) {
  const std::size_t n = c_k.size();
  if (c_true.size() != n || m.size() != n)
    throw std::invalid_argument("error_norms: dimension mismatch");
  ErrorNorms out;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = c_k[i] - c_true[i];
    out.eps_inf = std::max(out.eps_inf, std::abs(d));
    sum += m[i] * d * d;
  }
  out.eps_2 = std::sqrt(sum);
  return out;
}

double check_from_below_condition(const ForwardSolution& u0_sol, const NodeField& psi,
                                  const SparseMatrix& K, const NodeField& m) {
  const std::size_t n = psi.size();
  if (u0_sol.final.size() != n || static_cast<std::size_t>(K.n) != n || m.size() != n)
    throw std::invalid_argument("check_from_below_condition: size mismatch");
  NodeField diff(n), Kd(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = u0_sol.final[i] - psi[i];
  kernels::matvec(K, diff, Kd);
  double minimum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) minimum = std::min(minimum, Kd[i] / m[i]);
  return minimum;
}

IdentificationResult identify(const ProblemSpec& problem, const NodeField& psi, const Mesh& mesh,
                              const TimeGrid& grid, const IdentificationConfig& config) {
  const std::size_t n = mesh.node_count();
  if (psi.size() != n) throw std::invalid_argument("identify: data size does not match the mesh");
  if (config.max_iterations < 1)
    throw std::invalid_argument("identify: max_iterations must be at least 1");

  const double floor =
      config.psi_floor > 0.0 ? config.psi_floor : 1e-8 * kernels::max_value(psi);
  require_above_floor(psi, floor);

  const SparseMatrix K = assemble_stiffness(mesh, problem.coeff);
  const NodeField m = assemble_lumped_mass(mesh);
  const NodeField f_T = sample_source(mesh, problem.source, grid.horizon());

  std::optional<NodeField> c_true;
  if (problem.c_true) c_true = sample_to_nodes(mesh, *problem.c_true);

  IdentificationResult result;
  result.source_hypothesis_ok = problem.source.satisfies_monotone_hypothesis();

  NodeField c = config.init_mode == InitMode::from_above
                    ? initial_coefficient_from_above(mesh, K, m, psi, f_T, floor)
                    : NodeField(n, 0.0);
  result.coefficient_iterates.push_back(c);

  ForwardOptions fwd;
  fwd.theta = 1.0;
  fwd.linear = config.linear;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  NodeField prev_wN;
  for (int k = 1; k <= config.max_iterations; ++k) {
    ForwardSolution sol = solve_forward_assembled(mesh, K, m, c, problem.source, grid, fwd);

    if (k == 1 && config.init_mode == InitMode::zero)
      result.from_below_condition_min = check_from_below_condition(sol, psi, K, m);
    // sol was computed with c^{k-1}; it completes the previous record's
    // state-monotonicity entry.
    if (k >= 2) result.history[k - 2].w_min_increase = kernels::min_difference(sol.final, prev_wN);
    prev_wN = sol.final;

    NodeField c_next = update_coefficient(mesh, K, m, psi, f_T, sol, floor);
    if (config.clip_negative)
      for (double& v : c_next) v = std::max(v, 0.0);

    IterationRecord rec;
    rec.k = k;
    if (c_true) {
      const ErrorNorms err = error_norms(c_next, *c_true, m);
      rec.eps_inf = err.eps_inf;
      rec.eps_2 = err.eps_2;
    } else {
      rec.eps_inf = nan;
      rec.eps_2 = nan;
    }
    rec.delta_c_inf = kernels::max_abs_difference(c_next, c);
    rec.min_c = kernels::min_value(c_next);
    rec.max_increase = -kernels::min_difference(c, c_next);  // max_i (c_next - c)_i
    rec.w_min_increase = nan;                                // filled by the next solve
    result.history.push_back(rec);

    c = std::move(c_next);
    if (config.keep_iterates) result.coefficient_iterates.push_back(c);

    if (config.stop_tol > 0.0 && rec.delta_c_inf < config.stop_tol) {
      result.converged = true;
      break;
    }
  }

  result.iterations = static_cast<int>(result.history.size());
  if (!config.keep_iterates) {
    result.coefficient_iterates.clear();
    result.coefficient_iterates.push_back(c);
  }

  // One more forward solve with the final coefficient: it supplies the last
  // record's state-monotonicity entry and the data misfit.
  result.final_forward = solve_forward_assembled(mesh, K, m, c, problem.source, grid, fwd);
  result.history.back().w_min_increase =
      kernels::min_difference(result.final_forward.final, prev_wN);
  result.data_misfit_inf = kernels::max_abs_difference(result.final_forward.final, psi);
  return result;
}

}  // namespace reactid
