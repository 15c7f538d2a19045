#pragma once

#include <vector>

#include "reactid/assembly.hpp"
#include "reactid/cg.hpp"
#include "reactid/csr.hpp"
#include "reactid/field.hpp"
#include "reactid/mesh.hpp"

namespace reactid {

struct SourceSpec;

/// Uniform time grid t_n = n * tau, n = 0..steps.
struct TimeGrid {
  double tau = 0.0;
  int steps = 0;

  TimeGrid() = default;
  TimeGrid(double tau_, int steps_);

  /// Grid whose step divides the horizon: steps = horizon / tau, validated
  /// to 1e-12 relative. Throws std::invalid_argument otherwise.
  static TimeGrid for_horizon(double horizon, double tau);

  double horizon() const { return tau * steps; }
  double time_at(int n) const { return tau * n; }
};

/// Result of a forward (direct-problem) solve.
///
/// final and penultimate are w_N and w_{N-1}; time_derivative_at_T is their
/// difference quotient, computed nodewise as exactly (final - penultimate) /
/// tau. Per-step minima/maxima and the minimum nodal increment are always
/// recorded; the full trajectory w_0..w_N only when requested.
struct ForwardSolution {
  NodeField final;
  NodeField penultimate;
  NodeField time_derivative_at_T;
  std::vector<NodeField> trajectory;

  std::vector<double> step_min;            // min_i w_n, n = 0..N
  std::vector<double> step_max;            // max_i w_n, n = 0..N
  std::vector<double> step_increment_min;  // min_i (w_{n+1} - w_n), n = 0..N-1

  /// Set when the source satisfies the monotone hypotheses (f(.,0) = 0,
  /// f increasing in time) yet the discrete solution lost nonnegativity or
  /// stepwise monotonicity beyond 1e-10 * max|w|. Diagnostic only; the solve
  /// does not abort.
  bool dmp_violation = false;

  int total_cg_iterations = 0;
};

struct ForwardOptions {
  double theta = 1.0;  // 1 = fully implicit, 0.5 = second-order two-level
  bool keep_trajectory = false;
  SolveOptions linear{};
};

/// One fully implicit step: solves
///   (diag(m)/tau + K + diag(c .* m)) w_{n+1} = diag(m)/tau w_n + F_{n+1}.
NodeField step_implicit(const SparseMatrix& K, const NodeField& m, const NodeField& c,
                        const NodeField& w_n, const NodeField& load_next, double tau,
                        const SolveOptions& opts = {});

/// Solve the direct problem from w_0 = 0 over the whole grid. theta = 1 is
/// the backward-difference scheme used throughout identification; theta =
/// 1/2 averages the operator and the load between levels and is admitted
/// for synthetic-data generation only.
ForwardSolution solve_forward(const Mesh& mesh, const CoefficientSpec& coeff, const NodeField& c,
                              const SourceSpec& source, const TimeGrid& grid,
                              const ForwardOptions& opts = {});

/// Same, with the elliptic operator and lumped mass already assembled
/// (identification reuses them across iterations).
ForwardSolution solve_forward_assembled(const Mesh& mesh, const SparseMatrix& K,
                                        const NodeField& m, const NodeField& c,
                                        const SourceSpec& source, const TimeGrid& grid,
                                        const ForwardOptions& opts = {});

struct MonotonicityReport {
  double min_value = 0.0;      // min over n of min_i w_n
  double min_increment = 0.0;  // min over n of min_i (w_{n+1} - w_n)
};

/// Discrete-maximum-principle diagnostic: under the monotone source
/// hypotheses on a nonobtuse lumped mesh both minima stay above
/// -1e-10 * max|w|. Pure observation, never a gate.
MonotonicityReport check_discrete_monotonicity(const ForwardSolution& sol);

/// System matrix of the two-level scheme:
///   theta * K + diag(m / tau + theta * c .* m).
SparseMatrix build_system_matrix(const SparseMatrix& K, const NodeField& m, const NodeField& c,
                                 double tau, double theta);

}  // namespace reactid
