#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reactid/cg.hpp"
#include "reactid/csr.hpp"
#include "reactid/field.hpp"
#include "reactid/mesh.hpp"
#include "reactid/problems.hpp"
#include "reactid/time_stepping.hpp"

namespace reactid {

/// Initial guess for the reaction coefficient.
///
/// from_above evaluates the stationary balance at the final time with the
/// time derivative dropped; the iterates then decrease monotonically toward
/// the true coefficient. zero starts at c = 0; the first corrected iterate
/// dips negative before the iteration recovers.
enum class InitMode { from_above, zero };

struct IdentificationConfig {
  InitMode init_mode = InitMode::from_above;
  int max_iterations = 20;
  /// Stop when the max-norm coefficient change drops below this; 0 runs all
  /// max_iterations so per-iteration histories are complete.
  double stop_tol = 0.0;
  /// Smallest admissible nodal data value; division by psi demands a guard.
  /// Nonpositive selects the default 1e-8 * max_i psi_i.
  double psi_floor = 0.0;
  /// Project iterates onto c >= 0 after each update. Off by default: the
  /// negative first iterate of the zero start is a documented observable.
  bool clip_negative = false;
  /// Keep c^0..c^K in the result (cheap at field sizes of a few thousand);
  /// otherwise only the final coefficient is stored.
  bool keep_iterates = true;
  SolveOptions linear{};
};

/// Data value below the admissible floor at a specific node.
class PsiFloorError : public std::runtime_error {
 public:
  int node;
  PsiFloorError(int node_, double value, double floor);
};

struct IterationRecord {
  int k = 0;
  double eps_inf = 0.0;      // max_i |c^k - c_true|, NaN when c_true unknown
  double eps_2 = 0.0;        // lumped L2 error, NaN when c_true unknown
  double delta_c_inf = 0.0;  // max_i |c^k - c^{k-1}|
  double min_c = 0.0;        // min_i c^k_i
  double max_increase = 0.0;      // max_i (c^k - c^{k-1})_i; <= 0 means monotone descent
  double w_min_increase = 0.0;    // min_i (w_N(c^k) - w_N(c^{k-1}))_i
};

struct IdentificationResult {
  /// c^0..c^K when keep_iterates, otherwise just the final coefficient.
  std::vector<NodeField> coefficient_iterates;
  /// One record per completed iteration, k = 1..iterations.
  std::vector<IterationRecord> history;
  bool converged = false;
  int iterations = 0;
  /// Forward solution computed with the final coefficient.
  ForwardSolution final_forward;
  /// max_i |w_N(final coefficient) - psi|.
  double data_misfit_inf = 0.0;
  /// min_i of the mass-scaled elliptic operator applied to (w_N(c=0) - psi);
  /// nonnegative indicates the sufficient condition for a monotone approach
  /// from below. Recorded for the zero start only.
  std::optional<double> from_below_condition_min;
  /// Whether the source satisfies f(.,0) = 0 and grows in time (the
  /// hypotheses behind the monotonicity results). Checked, never enforced.
  bool source_hypothesis_ok = true;

  const NodeField& final_coefficient() const { return coefficient_iterates.back(); }
};

/// c^0_i = ( f_T_i - (K psi)_i / m_i ) / psi_i: the lumped pointwise solution
/// of (c^0 psi, v) = -a(psi, v) + (f(., T), v). Throws PsiFloorError at the
/// first node with psi_i < psi_floor.
NodeField initial_coefficient_from_above(const Mesh& mesh, const SparseMatrix& K,
                                         const NodeField& m, const NodeField& psi,
                                         const NodeField& f_T, double psi_floor);

/// c^{k+1}_i = ( -(w_N - w_{N-1})_i / tau - (K psi)_i / m_i + f_T_i ) / psi_i,
/// with the difference quotient taken from sol.time_derivative_at_T.
NodeField update_coefficient(const Mesh& mesh, const SparseMatrix& K, const NodeField& m,
                             const NodeField& psi, const NodeField& f_T,
                             const ForwardSolution& sol, double psi_floor);

/// Alternate fully implicit forward solves with coefficient updates starting
/// from the configured initial guess. Error norms against problem.c_true are
/// recorded when it is present, NaN otherwise.
IdentificationResult identify(const ProblemSpec& problem, const NodeField& psi, const Mesh& mesh,
                              const TimeGrid& grid, const IdentificationConfig& config);

struct ErrorNorms {
  double eps_inf = 0.0;
  double eps_2 = 0.0;  // sqrt(sum_i m_i (c_k - c_true)_i^2)
};

ErrorNorms error_norms(const NodeField& c_k, const NodeField& c_true, const NodeField& m);

/// min_i (K (w_N - psi))_i / m_i for the zero-coefficient forward solution;
/// see IdentificationResult::from_below_condition_min.
double check_from_below_condition(const ForwardSolution& u0_sol, const NodeField& psi,
                                  const SparseMatrix& K, const NodeField& m);

}  // namespace reactid
