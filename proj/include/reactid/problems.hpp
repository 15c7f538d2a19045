#pragma once

#include <array>
#include <optional>
#include <vector>

#include "reactid/assembly.hpp"
#include "reactid/field.hpp"
#include "reactid/mesh.hpp"

namespace reactid {

/// Separable source f(x, t) = amplitude * t^time_power * exp(b1 x1 + b2 x2).
///
/// Identification rests on f(., 0) = 0 and f increasing in time, which this
/// family satisfies exactly when time_power >= 1 and amplitude > 0;
/// satisfies_monotone_hypothesis() reports that so callers can warn.
struct SourceSpec {
  double amplitude = 0.0;
  int time_power = 0;
  std::array<double, 2> exponent{0.0, 0.0};

  double time_factor(double t) const {
    double p = 1.0;
    for (int i = 0; i < time_power; ++i) p *= t;
    return amplitude * p;
  }
  double spatial_profile(double x1, double x2) const;
  double value(double x1, double x2, double t) const {
    return time_factor(t) * spatial_profile(x1, x2);
  }
  bool satisfies_monotone_hypothesis() const { return time_power >= 1 && amplitude > 0.0; }
};

/// One override region of a piecewise-constant coefficient. Shapes are
/// closed sets; membership uses squared distances and coordinate bounds
/// only, so boundary decisions involve no transcendental round-off.
struct Region {
  enum class Shape { circle, rectangle };
  Shape shape = Shape::circle;
  std::array<double, 2> center{0.0, 0.0};
  double radius = 0.0;           // circle
  double side_x = 0.0, side_y = 0.0;  // rectangle
  double value = 0.0;

  bool contains(double x1, double x2) const;
};

/// Piecewise-constant coefficient: background value overridden by regions in
/// declaration order, the last matching region winning.
struct RegionCoefficient {
  double background = 0.0;
  std::vector<Region> regions;

  double operator()(double x1, double x2) const;
};

/// Data of one initial-boundary value problem on a rectangle, plus the true
/// reaction coefficient when it is known (synthetic-data generation and
/// error reporting need it).
struct ProblemSpec {
  double x_len = 1.0, y_len = 1.0;
  CoefficientSpec coeff;
  SourceSpec source;
  double horizon = 0.0;
  std::optional<RegionCoefficient> c_true;
};

/// The built-in model problem: unit square, k = 1, mu = 10,
/// f = 100 t exp(-x1), T = 0.25, and a piecewise-constant reaction
/// coefficient that is 5 inside the circle of radius 0.3 around (0.6, 0.4),
/// 1 inside the axis-aligned square of side 0.2 around (0.3, 0.8), and 0
/// elsewhere.
ProblemSpec model_problem();

/// Pointwise evaluation at the mesh nodes.
template <class F>
NodeField sample_to_nodes(const Mesh& mesh, F&& f) {
  NodeField values(mesh.node_count());
  for (int i = 0; i < mesh.node_count(); ++i) values[i] = f(mesh.nodes[i][0], mesh.nodes[i][1]);
  return values;
}

/// Nodal samples of the source at a fixed time.
NodeField sample_source(const Mesh& mesh, const SourceSpec& source, double t);

/// Final-time observation data: solve the direct problem with the true
/// coefficient on the given mesh and time step and return w_N. theta = 1 is
/// the fully implicit scheme, theta = 1/2 the second-order two-level scheme
/// used to generate data on finer grids than the identification runs on.
/// Throws std::invalid_argument when c_true is absent or data_tau does not
/// divide the horizon.
NodeField generate_synthetic_data(const ProblemSpec& problem, const Mesh& mesh, double data_tau,
                                  double theta);

}  // namespace reactid
