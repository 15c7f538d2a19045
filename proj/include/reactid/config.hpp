#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "reactid/identification.hpp"
#include "reactid/mesh.hpp"
#include "reactid/problems.hpp"
#include "reactid/time_stepping.hpp"

namespace reactid {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// One run, fully specified. Parsed from a JSON document with sections
/// {domain, mesh, coefficients, source, time, identification, output};
/// identification and output are optional, every other section is required.
/// Parsing is strict: an unknown key anywhere is an error naming the key.
struct RunConfig {
  double x_length = 1.0;
  double y_length = 1.0;
  int nx = 0;
  int ny = 0;

  double diffusion = 1.0;
  double boundary_mu = 0.0;
  /// Reaction coefficient: the forward solve's c, the data generator's
  /// c_true, and the identification error reference. Absent means c = 0 for
  /// forward runs and no error norms during identification.
  std::optional<RegionCoefficient> reaction;

  SourceSpec source;

  double horizon = 0.0;
  double tau = 0.0;
  /// Two-level scheme weight for forward runs and data generation;
  /// identification always steps fully implicitly.
  double theta = 1.0;

  IdentificationConfig identification;

  std::string output_directory = "out";
  bool vtk = false;
  /// Evenly spaced trajectory snapshots written by the forward command.
  int snapshots = 0;

  Mesh build_mesh() const { return build_rect_mesh(x_length, y_length, nx, ny); }
  TimeGrid build_grid() const { return TimeGrid::for_horizon(horizon, tau); }
  ProblemSpec build_problem() const;
};

/// Parse a JSON document. Unknown keys, wrong types, and violated value
/// constraints all throw ConfigError with the offending key in the message.
RunConfig parse_config(const std::string& json_text);

/// parse_config over a file's contents.
RunConfig load_config(const std::string& path);

}  // namespace reactid
