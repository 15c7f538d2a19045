#include "reactid/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "reactid/identification.hpp"
#include "reactid/io.hpp"
#include "reactid/kernels.hpp"
#include "reactid/problems.hpp"
#include "reactid/time_stepping.hpp"

namespace reactid {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int fail(const std::string& stage, const std::string& message) {
  std::cerr << "error [" << stage << "]: " << message << "\n";
  return 1;
}

void warn_on_source_hypothesis(const SourceSpec& source) {
  if (!source.satisfies_monotone_hypothesis())
    std::cerr << "warning: source does not vanish at t = 0 or does not increase in time; "
                 "the monotone-identification hypotheses are violated\n";
}

fs::path prepare_output_dir(const std::string& directory) {
  fs::path dir(directory);
  fs::create_directories(dir);
  return dir;
}

std::string padded(int k) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", k);
  return buf;
}

}  // namespace

int cmd_forward(const RunConfig& cfg) {
  Mesh mesh;
  TimeGrid grid;
  ProblemSpec problem;
  try {
    mesh = cfg.build_mesh();
    grid = cfg.build_grid();
    problem = cfg.build_problem();
  } catch (const std::exception& e) {
    return fail("setup", e.what());
  }

  warn_on_source_hypothesis(problem.source);
  ForwardSolution sol;
  NodeField c(mesh.node_count(), 0.0);
  try {
    if (cfg.reaction) c = sample_to_nodes(mesh, *cfg.reaction);
    ForwardOptions opts;
    opts.theta = cfg.theta;
    opts.keep_trajectory = cfg.snapshots > 0;
    sol = solve_forward(mesh, problem.coeff, c, problem.source, grid, opts);
  } catch (const std::exception& e) {
    return fail("forward solve", e.what());
  }

  try {
    const fs::path dir = prepare_output_dir(cfg.output_directory);
    write_field_csv((dir / "final_field.csv").string(), mesh, sol.final);
    if (cfg.vtk) write_vtk((dir / "final_field.vtk").string(), mesh, sol.final, "u_final");

    if (cfg.snapshots > 0) {
      const int last = static_cast<int>(sol.trajectory.size()) - 1;
      for (int s = 1; s <= cfg.snapshots; ++s) {
        const int step = static_cast<int>(static_cast<long long>(last) * s / cfg.snapshots);
        write_field_csv((dir / ("snapshot_" + padded(s) + ".csv")).string(), mesh,
                        sol.trajectory[step]);
      }
    }

    const double u_min = kernels::min_value(sol.final);
    const double u_max = kernels::max_value(sol.final);
    const MonotonicityReport mono = check_discrete_monotonicity(sol);
    std::ofstream summary(dir / "summary.txt", std::ios::binary);
    summary << "nodes = " << mesh.node_count() << "\n";
    summary << "steps = " << grid.steps << "\n";
    summary << "tau = " << fmt17(grid.tau) << "\n";
    summary << "theta = " << fmt17(cfg.theta) << "\n";
    summary << "u_min_T = " << fmt17(u_min) << "\n";
    summary << "u_max_T = " << fmt17(u_max) << "\n";
    summary << "trajectory_min = " << fmt17(mono.min_value) << "\n";
    summary << "trajectory_min_increment = " << fmt17(mono.min_increment) << "\n";
    summary << "cg_iterations = " << sol.total_cg_iterations << "\n";
    if (!summary) throw std::runtime_error("cannot write summary.txt");

    std::cout << "forward: " << grid.steps << " steps, u(T) in [" << fmt17(u_min) << ", "
              << fmt17(u_max) << "], output in " << dir.string() << "\n";
  } catch (const std::exception& e) {
    return fail("output", e.what());
  }
  return 0;
}

int cmd_generate_data(const RunConfig& cfg) {
  Mesh mesh;
  ProblemSpec problem;
  try {
    mesh = cfg.build_mesh();
    problem = cfg.build_problem();
    if (!problem.c_true)
      throw std::invalid_argument("coefficients.reaction is required to generate data");
    TimeGrid::for_horizon(cfg.horizon, cfg.tau);  // validate before solving
  } catch (const std::exception& e) {
    return fail("setup", e.what());
  }

  warn_on_source_hypothesis(problem.source);
  NodeField psi;
  try {
    psi = generate_synthetic_data(problem, mesh, cfg.tau, cfg.theta);
  } catch (const std::exception& e) {
    return fail("data generation", e.what());
  }

  try {
    const fs::path dir = prepare_output_dir(cfg.output_directory);
    write_field_csv((dir / "psi.csv").string(), mesh, psi);
    if (cfg.vtk) write_vtk((dir / "psi.vtk").string(), mesh, psi, "psi");
    std::cout << "generate-data: " << psi.size() << " nodes, psi in ["
              << fmt17(kernels::min_value(psi)) << ", " << fmt17(kernels::max_value(psi))
              << "], output in " << dir.string() << "\n";
  } catch (const std::exception& e) {
    return fail("output", e.what());
  }
  return 0;
}

int cmd_identify(const RunConfig& cfg, const std::string& psi_path) {
  Mesh mesh;
  TimeGrid grid;
  ProblemSpec problem;
  NodeField psi;
  try {
    mesh = cfg.build_mesh();
    grid = cfg.build_grid();
    problem = cfg.build_problem();
  } catch (const std::exception& e) {
    return fail("setup", e.what());
  }
  try {
    psi = read_psi_for_mesh(psi_path, mesh);
  } catch (const std::exception& e) {
    return fail("data input", e.what());
  }

  warn_on_source_hypothesis(problem.source);
  IdentificationResult result;
  try {
    result = identify(problem, psi, mesh, grid, cfg.identification);
  } catch (const std::exception& e) {
    return fail("identification", e.what());
  }

  try {
    const fs::path dir = prepare_output_dir(cfg.output_directory);
    for (std::size_t k = 0; k < result.coefficient_iterates.size(); ++k)
      write_field_csv((dir / ("c_" + padded(static_cast<int>(k)) + ".csv")).string(), mesh,
                      result.coefficient_iterates[k]);
    write_convergence_csv((dir / "convergence.csv").string(), result.history);
    if (cfg.vtk)
      write_vtk((dir / "c_final.vtk").string(), mesh, result.final_coefficient(), "c");

    std::ofstream summary(dir / "summary.txt", std::ios::binary);
    summary << "iterations = " << result.iterations << "\n";
    summary << "converged = " << (result.converged ? "true" : "false") << "\n";
    summary << "data_misfit_inf = " << fmt17(result.data_misfit_inf) << "\n";
    summary << "final_min_c = " << fmt17(kernels::min_value(result.final_coefficient())) << "\n";
    summary << "final_max_c = " << fmt17(kernels::max_value(result.final_coefficient())) << "\n";
    if (result.from_below_condition_min)
      summary << "from_below_condition_min = " << fmt17(*result.from_below_condition_min) << "\n";
    summary << "source_hypothesis_ok = " << (result.source_hypothesis_ok ? "true" : "false")
            << "\n";
    if (!summary) throw std::runtime_error("cannot write summary.txt");

    std::cout << "identify: " << result.iterations << " iterations, misfit "
              << fmt17(result.data_misfit_inf) << ", output in " << dir.string() << "\n";
  } catch (const std::exception& e) {
    return fail("output", e.what());
  }
  return 0;
}

}  // namespace reactid
