// Microbenchmark: parallel kernels against their serial reference
// implementations on mesh-sized data. Also reports the worst result
// disagreement per operation, which must sit at the documented level
// (exactly zero for matvec and assembly, round-off for reductions).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "reactid/assembly.hpp"
#include "reactid/cg.hpp"
#include "reactid/kernels.hpp"
#include "reactid/mesh.hpp"
#include "reactid/problems.hpp"
#include "reactid/time_stepping.hpp"

using namespace reactid;

namespace {

volatile double sink = 0.0;  // keeps results alive across optimization

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double best_time(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now();
    body();
    best = std::min(best, now() - t0);
  }
  return best;
}

void row(const std::string& name, int n, double t_serial, double t_parallel, double max_diff) {
  std::printf("%-24s %8d %12.3f %12.3f %9.2f %12.3g\n", name.c_str(), n, t_serial * 1e3,
              t_parallel * 1e3, t_serial / t_parallel, max_diff);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

void bench_mesh(int cells, int assembly_reps, int vector_reps, int solve_reps) {
  const Mesh mesh = build_rect_mesh(1.0, 1.0, cells, cells);
  const int n = mesh.node_count();
  const ProblemSpec problem = model_problem();

  SparseMatrix K_serial, K_parallel;
  const double t_as = best_time(assembly_reps, [&] {
    K_serial = serial::assemble_stiffness(mesh, problem.coeff);
    sink = sink + K_serial.values[0];
  });
  const double t_ap = best_time(assembly_reps, [&] {
    K_parallel = assemble_stiffness(mesh, problem.coeff);
    sink = sink + K_parallel.values[0];
  });
  row("stiffness assembly", n, t_as, t_ap, max_abs_diff(K_serial.values, K_parallel.values));

  std::vector<double> x(n), y_serial(n), y_parallel(n);
  for (int i = 0; i < n; ++i) x[i] = std::sin(0.37 * i) + 1.5;

  const double t_ms = best_time(vector_reps, [&] {
    kernels::serial::matvec(K_serial, x, y_serial);
    sink = sink + y_serial[0];
  });
  const double t_mp = best_time(vector_reps, [&] {
    kernels::matvec(K_parallel, x, y_parallel);
    sink = sink + y_parallel[0];
  });
  row("sparse matvec", n, t_ms, t_mp, max_abs_diff(y_serial, y_parallel));

  double d_serial = 0.0, d_parallel = 0.0;
  const double t_ds = best_time(vector_reps, [&] {
    d_serial = kernels::serial::dot(x, y_serial);
    sink = sink + d_serial;
  });
  const double t_dp = best_time(vector_reps, [&] {
    d_parallel = kernels::dot(x, y_parallel);
    sink = sink + d_parallel;
  });
  row("dot product", n, t_ds, t_dp, std::abs(d_serial - d_parallel));

  const NodeField m = assemble_lumped_mass(mesh);
  const NodeField c(n, 1.0);
  const SparseMatrix A = build_system_matrix(K_parallel, m, c, 1e-3, 1.0);
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) b[i] = m[i] * (1.0 + 0.5 * std::cos(0.11 * i));

  SolveOptions opts;
  opts.rel_tol = 1e-10;
  std::vector<double> x_serial, x_parallel;
  const double t_ss = best_time(solve_reps, [&] {
    x_serial = serial::solve_spd(A, b, opts);
    sink = sink + x_serial[0];
  });
  const double t_sp = best_time(solve_reps, [&] {
    x_parallel = solve_spd(A, b, opts);
    sink = sink + x_parallel[0];
  });
  row("cg solve", n, t_ss, t_sp, max_abs_diff(x_serial, x_parallel));
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
  std::printf("%-24s %8s %12s %12s %9s %12s\n", "operation", "n", "serial/ms", "parallel/ms",
              "speedup", "max|diff|");
  bench_mesh(50, 20, 200, 5);
  bench_mesh(200, 5, 50, 3);
  std::printf("(matvec and assembly must agree exactly; reductions to round-off)\n");
  return sink == 1e308 ? 1 : 0;
}
