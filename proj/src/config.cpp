#include "reactid/config.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace reactid {

namespace {

using nlohmann::json;

/// Reject keys outside the allowed set so a misspelled key fails loudly
/// instead of silently falling back to a default.
void check_keys(const json& obj, const std::string& where, std::vector<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + " is missing required key \"" + key + "\"");
  return *it;
}

double get_number(const json& obj, const std::string& where, const char* key) {
  const json& v = require(obj, where, key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const std::string& where, const char* key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ConfigError(where + "." + key + " must be a number");
  return it->get<double>();
}

int get_integer(const json& obj, const std::string& where, const char* key) {
  const json& v = require(obj, where, key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

int get_integer_or(const json& obj, const std::string& where, const char* key, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return it->get<int>();
}

bool get_bool_or(const json& obj, const std::string& where, const char* key, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
  return it->get<bool>();
}

std::string get_string_or(const json& obj, const std::string& where, const char* key,
                          const std::string& fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) throw ConfigError(where + "." + key + " must be a string");
  return it->get<std::string>();
}

std::array<double, 2> get_pair(const json& obj, const std::string& where, const char* key) {
  const json& v = require(obj, where, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(where + "." + key + " must be an array of 2 numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

const json& require_object(const json& root, const char* section) {
  const json& v = require(root, "config", section);
  if (!v.is_object()) throw ConfigError(std::string("section \"") + section + "\" must be an object");
  return v;
}

Region parse_region(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  // Name unknown keys first, then narrow to the per-shape key set.
  check_keys(obj, where, {"shape", "center", "radius", "side_x", "side_y", "value"});
  const json& shape_value = require(obj, where, "shape");
  if (!shape_value.is_string()) throw ConfigError(where + ".shape must be a string");
  const std::string shape = shape_value.get<std::string>();
  Region region;
  if (shape == "circle") {
    check_keys(obj, where, {"shape", "center", "radius", "value"});
    region.shape = Region::Shape::circle;
    region.radius = get_number(obj, where, "radius");
    if (!(region.radius > 0.0)) throw ConfigError(where + ".radius must be positive");
  } else if (shape == "rectangle") {
    check_keys(obj, where, {"shape", "center", "side_x", "side_y", "value"});
    region.shape = Region::Shape::rectangle;
    region.side_x = get_number(obj, where, "side_x");
    region.side_y = get_number(obj, where, "side_y");
    if (!(region.side_x > 0.0) || !(region.side_y > 0.0))
      throw ConfigError(where + " sides must be positive");
  } else {
    throw ConfigError(where + ".shape must be \"circle\" or \"rectangle\"");
  }
  region.center = get_pair(obj, where, "center");
  region.value = get_number(obj, where, "value");
  return region;
}

RegionCoefficient parse_region_coefficient(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  check_keys(obj, where, {"background", "regions"});
  RegionCoefficient rc;
  rc.background = get_number_or(obj, where, "background", 0.0);
  auto it = obj.find("regions");
  if (it != obj.end()) {
    if (!it->is_array()) throw ConfigError(where + ".regions must be an array");
    int index = 0;
    for (const json& r : *it) {
      rc.regions.push_back(parse_region(r, where + ".regions[" + std::to_string(index) + "]"));
      ++index;
    }
  }
  return rc;
}

InitMode parse_init_mode(const std::string& text, const std::string& where) {
  if (text == "from_above") return InitMode::from_above;
  if (text == "zero") return InitMode::zero;
  throw ConfigError(where + ".init_mode must be \"from_above\" or \"zero\"");
}

}  // namespace

ProblemSpec RunConfig::build_problem() const {
  ProblemSpec problem;
  problem.x_len = x_length;
  problem.y_len = y_length;
  problem.coeff = CoefficientSpec::constant(diffusion, boundary_mu);
  problem.source = source;
  problem.horizon = horizon;
  problem.c_true = reaction;
  return problem;
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(root, "config",
             {"domain", "mesh", "coefficients", "source", "time", "identification", "output"});

  RunConfig cfg;

  const json& domain = require_object(root, "domain");
  check_keys(domain, "domain", {"x_length", "y_length"});
  cfg.x_length = get_number(domain, "domain", "x_length");
  cfg.y_length = get_number(domain, "domain", "y_length");
  if (!(cfg.x_length > 0.0) || !(cfg.y_length > 0.0))
    throw ConfigError("domain lengths must be positive");

  const json& mesh = require_object(root, "mesh");
  check_keys(mesh, "mesh", {"nx", "ny"});
  cfg.nx = get_integer(mesh, "mesh", "nx");
  cfg.ny = get_integer(mesh, "mesh", "ny");
  if (cfg.nx < 1 || cfg.ny < 1) throw ConfigError("mesh.nx and mesh.ny must be at least 1");

  const json& coeff = require_object(root, "coefficients");
  check_keys(coeff, "coefficients", {"diffusion", "boundary_mu", "reaction"});
  cfg.diffusion = get_number(coeff, "coefficients", "diffusion");
  cfg.boundary_mu = get_number(coeff, "coefficients", "boundary_mu");
  if (!(cfg.diffusion > 0.0)) throw ConfigError("coefficients.diffusion must be positive");
  if (!(cfg.boundary_mu >= 0.0)) throw ConfigError("coefficients.boundary_mu must be nonnegative");
  if (auto it = coeff.find("reaction"); it != coeff.end())
    cfg.reaction = parse_region_coefficient(*it, "coefficients.reaction");

  const json& source = require_object(root, "source");
  check_keys(source, "source", {"amplitude", "time_power", "exponent"});
  cfg.source.amplitude = get_number(source, "source", "amplitude");
  cfg.source.time_power = get_integer(source, "source", "time_power");
  cfg.source.exponent = get_pair(source, "source", "exponent");
  if (cfg.source.time_power < 0) throw ConfigError("source.time_power must be nonnegative");

  const json& time = require_object(root, "time");
  check_keys(time, "time", {"horizon", "tau", "theta"});
  cfg.horizon = get_number(time, "time", "horizon");
  cfg.tau = get_number(time, "time", "tau");
  cfg.theta = get_number_or(time, "time", "theta", 1.0);
  if (!(cfg.horizon > 0.0)) throw ConfigError("time.horizon must be positive");
  if (!(cfg.tau > 0.0)) throw ConfigError("time.tau must be positive");
  if (cfg.theta != 1.0 && cfg.theta != 0.5) throw ConfigError("time.theta must be 1 or 0.5");

  if (auto it = root.find("identification"); it != root.end()) {
    const json& ident = *it;
    if (!ident.is_object()) throw ConfigError("section \"identification\" must be an object");
    check_keys(ident, "identification",
               {"init_mode", "max_iterations", "stop_tol", "psi_floor", "clip_negative"});
    cfg.identification.init_mode = parse_init_mode(
        get_string_or(ident, "identification", "init_mode", "from_above"), "identification");
    cfg.identification.max_iterations =
        get_integer_or(ident, "identification", "max_iterations", 20);
    cfg.identification.stop_tol = get_number_or(ident, "identification", "stop_tol", 0.0);
    cfg.identification.psi_floor = get_number_or(ident, "identification", "psi_floor", 0.0);
    cfg.identification.clip_negative =
        get_bool_or(ident, "identification", "clip_negative", false);
    if (cfg.identification.max_iterations < 1)
      throw ConfigError("identification.max_iterations must be at least 1");
    if (cfg.identification.stop_tol < 0.0)
      throw ConfigError("identification.stop_tol must be nonnegative");
  }

  if (auto it = root.find("output"); it != root.end()) {
    const json& output = *it;
    if (!output.is_object()) throw ConfigError("section \"output\" must be an object");
    check_keys(output, "output", {"directory", "vtk", "snapshots"});
    cfg.output_directory = get_string_or(output, "output", "directory", "out");
    cfg.vtk = get_bool_or(output, "output", "vtk", false);
    cfg.snapshots = get_integer_or(output, "output", "snapshots", 0);
    if (cfg.snapshots < 0) throw ConfigError("output.snapshots must be nonnegative");
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace reactid
