#include "reactid/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "reactid/time_stepping.hpp"

namespace reactid {

double SourceSpec::spatial_profile(double x1, double x2) const {
  return std::exp(exponent[0] * x1 + exponent[1] * x2);
}

bool Region::contains(double x1, double x2) const {
  if (shape == Shape::circle) {
    const double dx = x1 - center[0];
    const double dy = x2 - center[1];
    return dx * dx + dy * dy <= radius * radius;
  }
  return std::abs(x1 - center[0]) <= 0.5 * side_x && std::abs(x2 - center[1]) <= 0.5 * side_y;
}

double RegionCoefficient::operator()(double x1, double x2) const {
  double v = background;
  for (const Region& r : regions)
    if (r.contains(x1, x2)) v = r.value;
  return v;
}

ProblemSpec model_problem() {
  ProblemSpec p;
  p.x_len = 1.0;
  p.y_len = 1.0;
  p.coeff = CoefficientSpec::constant(1.0, 10.0);
  p.source = SourceSpec{100.0, 1, {-1.0, 0.0}};
  p.horizon = 0.25;
  RegionCoefficient c;
  c.background = 0.0;
  c.regions.push_back({Region::Shape::circle, {0.6, 0.4}, 0.3, 0.0, 0.0, 5.0});
  c.regions.push_back({Region::Shape::rectangle, {0.3, 0.8}, 0.0, 0.2, 0.2, 1.0});
  p.c_true = std::move(c);
  return p;
}

NodeField sample_source(const Mesh& mesh, const SourceSpec& source, double t) {
  return sample_to_nodes(mesh, [&](double x1, double x2) { return source.value(x1, x2, t); });
}

NodeField generate_synthetic_data(const ProblemSpec& problem, const Mesh& mesh, double data_tau,
                                  double theta) {
  if (!problem.c_true)
    throw std::invalid_argument(
        "generate_synthetic_data: the problem has no true reaction coefficient");
  const TimeGrid grid = TimeGrid::for_horizon(problem.horizon, data_tau);
  const NodeField c_nodes = sample_to_nodes(mesh, *problem.c_true);
  ForwardOptions opts;
  opts.theta = theta;
  ForwardSolution sol = solve_forward(mesh, problem.coeff, c_nodes, problem.source, grid, opts);
  return std::move(sol.final);
}

}  // namespace reactid
