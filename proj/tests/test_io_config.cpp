#include <doctest.h>

#include <bit>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reactid/config.hpp"
#include "reactid/io.hpp"
#include "reactid/mesh.hpp"
#include "support/fsutil.hpp"

using nlohmann::json;
using reactid::ConfigError;
using reactid::IterationRecord;
using reactid::Mesh;
using reactid::NodeField;
using reactid::RunConfig;
using reactid::build_rect_mesh;
using reactid::parse_config;
using reactid::testing::TempDir;
using reactid::testing::read_lines;
using reactid::testing::write_text;
namespace fs = std::filesystem;

namespace {

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

/// Full valid document exercising every recognized key.
json full_document() {
  return json::parse(R"({
    "domain": {"x_length": 2.0, "y_length": 1.5},
    "mesh": {"nx": 8, "ny": 6},
    "coefficients": {
      "diffusion": 1.25,
      "boundary_mu": 10.0,
      "reaction": {
        "background": 0.5,
        "regions": [
          {"shape": "circle", "center": [0.6, 0.4], "radius": 0.3, "value": 5.0},
          {"shape": "rectangle", "center": [0.3, 0.8], "side_x": 0.2, "side_y": 0.1, "value": 1.0}
        ]
      }
    },
    "source": {"amplitude": 100.0, "time_power": 1, "exponent": [-1.0, 0.25]},
    "time": {"horizon": 0.25, "tau": 0.001, "theta": 0.5},
    "identification": {
      "init_mode": "zero",
      "max_iterations": 7,
      "stop_tol": 0.01,
      "psi_floor": 1e-9,
      "clip_negative": true
    },
    "output": {"directory": "results", "vtk": true, "snapshots": 4}
  })");
}

void expect_config_error(const json& doc, const std::string& fragment) {
  try {
    parse_config(doc.dump());
    FAIL_CHECK("expected ConfigError mentioning '" << fragment << "'");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK_MESSAGE(msg.find(fragment) != std::string::npos,
                  "message '" << msg << "' does not mention '" << fragment << "'");
  }
}

/// Every (parent pointer, key) pair in the document, depth first.
void collect_key_paths(const json& node, const std::string& base,
                       std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& item : node.items()) {
      out.emplace_back(base, item.key());
      collect_key_paths(item.value(), base + "/" + item.key(), out);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i)
      collect_key_paths(node[i], base + "/" + std::to_string(i), out);
  }
}

}  // namespace

TEST_CASE("field CSV round-trips doubles bit for bit") {
  const TempDir dir;
  const Mesh mesh = build_rect_mesh(1.0, 1.0, 3, 2);  // 12 nodes
  const NodeField values = {0.1 + 0.2,
                            -1.0 / 3.0,
                            1e-300,
                            -1e300,
                            5e-324,
                            1.7976931348623157e308,
                            0.0,
                            -0.0,
                            1.0,
                            123456789.123456789,
                            3.141592653589793,
                            2.2250738585072014e-308};
  const std::string path = dir.file("field.csv");
  reactid::write_field_csv(path, mesh, values);

  const NodeField back = reactid::read_field_csv(path);
  REQUIRE(back.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(same_bits(back[i], values[i]));

  const auto lines = read_lines(path);
  REQUIRE(lines.size() == 13);
  CHECK(lines[0] == "x1,x2,value");
  CHECK(lines[1].rfind("0,0,", 0) == 0);  // first node sits at the origin

  const NodeField checked = reactid::read_psi_for_mesh(path, mesh);
  CHECK(checked == back);
  CHECK_THROWS_AS(reactid::read_psi_for_mesh(path, build_rect_mesh(1.0, 1.0, 4, 4)),
                  std::runtime_error);

  CHECK_THROWS_AS(reactid::write_field_csv(path, mesh, NodeField(3, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(reactid::write_field_csv(dir.file("no_such_dir/f.csv"), mesh, values),
                  std::runtime_error);
}

TEST_CASE("field CSV reader rejects malformed input") {
  const TempDir dir;
  const std::string path = dir.file("bad.csv");

  CHECK_THROWS_AS(reactid::read_field_csv(dir.file("missing.csv")), std::runtime_error);

  write_text(path, "");
  CHECK_THROWS_AS(reactid::read_field_csv(path), std::runtime_error);

  write_text(path, "x,y,value\n0,0,1\n");
  CHECK_THROWS_AS(reactid::read_field_csv(path), std::runtime_error);

  write_text(path, "x1,x2,value\n1,2\n");
  CHECK_THROWS_AS(reactid::read_field_csv(path), std::runtime_error);

  write_text(path, "x1,x2,value\n1,2,3,4\n");
  CHECK_THROWS_AS(reactid::read_field_csv(path), std::runtime_error);

  write_text(path, "x1,x2,value\n1,abc,3\n");
  CHECK_THROWS_AS(reactid::read_field_csv(path), std::runtime_error);

  write_text(path, "x1,x2,value\n1,2,3x\n");
  CHECK_THROWS_AS(reactid::read_field_csv(path), std::runtime_error);

  // Carriage returns and blank lines are tolerated.
  write_text(path, "x1,x2,value\r\n0,0,1.5\r\n\r\n1,0,-2.5\r\n");
  const NodeField v = reactid::read_field_csv(path);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == 1.5);
  CHECK(v[1] == -2.5);
}

TEST_CASE("VTK writer emits a well-formed legacy unstructured grid") {
  const TempDir dir;
  const Mesh mesh = build_rect_mesh(1.0, 1.0, 2, 1);  // 6 nodes, 4 triangles
  NodeField values(mesh.node_count());
  for (int i = 0; i < mesh.node_count(); ++i) values[i] = 0.5 * i - 1.0;
  const std::string path = dir.file("field.vtk");
  reactid::write_vtk(path, mesh, values, "temperature");

  const auto lines = read_lines(path);
  REQUIRE(lines.size() == 30);
  CHECK(lines[0] == "# vtk DataFile Version 3.0");
  CHECK(lines[1] == "temperature");
  CHECK(lines[2] == "ASCII");
  CHECK(lines[3] == "DATASET UNSTRUCTURED_GRID");
  CHECK(lines[4] == "POINTS 6 double");
  for (int i = 0; i < 6; ++i) {
    std::istringstream point(lines[5 + i]);
    double x = -1, y = -1, z = -1;
    REQUIRE(static_cast<bool>(point >> x >> y >> z));
    CHECK(x == mesh.nodes[i][0]);
    CHECK(y == mesh.nodes[i][1]);
    CHECK(z == 0.0);
  }
  CHECK(lines[11] == "CELLS 4 16");
  for (int t = 0; t < 4; ++t) {
    std::istringstream cell(lines[12 + t]);
    int count = 0, a = -1, b = -1, c = -1;
    REQUIRE(static_cast<bool>(cell >> count >> a >> b >> c));
    CHECK(count == 3);
    CHECK(a == mesh.triangles[t][0]);
    CHECK(b == mesh.triangles[t][1]);
    CHECK(c == mesh.triangles[t][2]);
  }
  CHECK(lines[16] == "CELL_TYPES 4");
  for (int t = 0; t < 4; ++t) CHECK(lines[17 + t] == "5");
  CHECK(lines[21] == "POINT_DATA 6");
  CHECK(lines[22] == "SCALARS temperature double 1");
  CHECK(lines[23] == "LOOKUP_TABLE default");
  for (int i = 0; i < 6; ++i) CHECK(std::stod(lines[24 + i]) == values[i]);

  CHECK_THROWS_AS(reactid::write_vtk(path, mesh, NodeField(2, 0.0), "u"), std::invalid_argument);
}

TEST_CASE("convergence CSV lists one row per iteration") {
  const TempDir dir;
  std::vector<IterationRecord> history(2);
  history[0].k = 1;
  history[0].eps_inf = 1.25;
  history[0].eps_2 = 0.5;
  history[0].delta_c_inf = 2.0;
  history[0].min_c = -0.75;
  history[0].max_increase = -0.0625;
  history[1].k = 2;
  history[1].eps_inf = std::numeric_limits<double>::quiet_NaN();
  history[1].eps_2 = std::numeric_limits<double>::quiet_NaN();
  history[1].delta_c_inf = 0.125;
  history[1].min_c = 0.0;
  history[1].max_increase = -0.25;

  const std::string path = dir.file("conv.csv");
  reactid::write_convergence_csv(path, history);
  const auto lines = read_lines(path);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "k,eps_inf,eps_2,delta_c_inf,min_c,max_increase");
  CHECK(lines[1] == "1,1.25,0.5,2,-0.75,-0.0625");
  CHECK(lines[2] == "2,nan,nan,0.125,0,-0.25");
}

TEST_CASE("full configuration document maps onto every field") {
  const RunConfig cfg = parse_config(full_document().dump());
  CHECK(cfg.x_length == 2.0);
  CHECK(cfg.y_length == 1.5);
  CHECK(cfg.nx == 8);
  CHECK(cfg.ny == 6);
  CHECK(cfg.diffusion == 1.25);
  CHECK(cfg.boundary_mu == 10.0);
  REQUIRE(cfg.reaction.has_value());
  CHECK(cfg.reaction->background == 0.5);
  REQUIRE(cfg.reaction->regions.size() == 2);
  CHECK(cfg.reaction->regions[0].radius == 0.3);
  CHECK(cfg.reaction->regions[0].value == 5.0);
  CHECK(cfg.reaction->regions[1].side_x == 0.2);
  CHECK(cfg.reaction->regions[1].side_y == 0.1);
  CHECK((*cfg.reaction)(0.6, 0.4) == 5.0);
  CHECK((*cfg.reaction)(0.05, 0.05) == 0.5);
  CHECK(cfg.source.amplitude == 100.0);
  CHECK(cfg.source.time_power == 1);
  CHECK(cfg.source.exponent[0] == -1.0);
  CHECK(cfg.source.exponent[1] == 0.25);
  CHECK(cfg.horizon == 0.25);
  CHECK(cfg.tau == 0.001);
  CHECK(cfg.theta == 0.5);
  CHECK(cfg.identification.init_mode == reactid::InitMode::zero);
  CHECK(cfg.identification.max_iterations == 7);
  CHECK(cfg.identification.stop_tol == 0.01);
  CHECK(cfg.identification.psi_floor == 1e-9);
  CHECK(cfg.identification.clip_negative);
  CHECK(cfg.output_directory == "results");
  CHECK(cfg.vtk);
  CHECK(cfg.snapshots == 4);

  const Mesh mesh = cfg.build_mesh();
  CHECK(mesh.node_count() == 9 * 7);
  CHECK(cfg.build_grid().steps == 250);
  const auto problem = cfg.build_problem();
  CHECK(problem.x_len == 2.0);
  CHECK(problem.coeff.diffusion(0.1, 0.1) == 1.25);
  CHECK(problem.coeff.boundary_mu(0.0, 0.5) == 10.0);
  CHECK(problem.horizon == 0.25);
  REQUIRE(problem.c_true.has_value());
  CHECK((*problem.c_true)(0.3, 0.8) == 1.0);
}

TEST_CASE("omitted optional sections fall back to defaults") {
  json doc = full_document();
  doc.erase("identification");
  doc.erase("output");
  doc["coefficients"].erase("reaction");
  doc["time"].erase("theta");
  const RunConfig cfg = parse_config(doc.dump());
  CHECK(!cfg.reaction.has_value());
  CHECK(cfg.theta == 1.0);
  CHECK(cfg.identification.init_mode == reactid::InitMode::from_above);
  CHECK(cfg.identification.max_iterations == 20);
  CHECK(cfg.identification.stop_tol == 0.0);
  CHECK(cfg.identification.psi_floor == 0.0);
  CHECK(!cfg.identification.clip_negative);
  CHECK(cfg.output_directory == "out");
  CHECK(!cfg.vtk);
  CHECK(cfg.snapshots == 0);

  // background defaults to zero when only regions are given
  json doc2 = full_document();
  doc2["coefficients"]["reaction"].erase("background");
  CHECK(parse_config(doc2.dump()).reaction->background == 0.0);
}

TEST_CASE("parser rejects malformed documents and wrong types") {
  CHECK_THROWS_AS(parse_config("{nope"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);
  CHECK_THROWS_AS(parse_config("null"), ConfigError);

  json doc = full_document();
  doc.erase("time");
  expect_config_error(doc, "time");

  doc = full_document();
  doc["domain"] = json::array();
  expect_config_error(doc, "domain");

  doc = full_document();
  doc["domain"]["x_length"] = "wide";
  expect_config_error(doc, "x_length");

  doc = full_document();
  doc["mesh"]["nx"] = 2.5;
  expect_config_error(doc, "nx");

  doc = full_document();
  doc["coefficients"]["reaction"]["regions"] = 7;
  expect_config_error(doc, "regions");

  doc = full_document();
  doc["coefficients"]["reaction"]["regions"][0]["center"] = {0.1};
  expect_config_error(doc, "center");

  doc = full_document();
  doc["coefficients"]["reaction"]["regions"][0]["shape"] = 5;
  expect_config_error(doc, "shape");

  doc = full_document();
  doc["identification"]["clip_negative"] = 1;
  expect_config_error(doc, "clip_negative");

  doc = full_document();
  doc["identification"]["init_mode"] = 5;
  expect_config_error(doc, "init_mode");

  doc = full_document();
  doc["source"]["exponent"] = {1.0, "x"};
  expect_config_error(doc, "exponent");
}

TEST_CASE("parser rejects out-of-range values") {
  auto mutated = [](const char* section, const char* key, json value) {
    json doc = full_document();
    doc[section][key] = std::move(value);
    return doc;
  };
  expect_config_error(mutated("time", "tau", -1.0), "tau");
  expect_config_error(mutated("time", "horizon", 0.0), "horizon");
  expect_config_error(mutated("time", "theta", 0.7), "theta");
  expect_config_error(mutated("mesh", "nx", 0), "nx");
  expect_config_error(mutated("mesh", "ny", -3), "ny");
  expect_config_error(mutated("domain", "x_length", 0.0), "length");
  expect_config_error(mutated("coefficients", "diffusion", 0.0), "diffusion");
  expect_config_error(mutated("coefficients", "boundary_mu", -1.0), "boundary_mu");
  expect_config_error(mutated("source", "time_power", -1), "time_power");
  expect_config_error(mutated("identification", "max_iterations", 0), "max_iterations");
  expect_config_error(mutated("identification", "stop_tol", -0.5), "stop_tol");
  expect_config_error(mutated("identification", "init_mode", "sideways"), "init_mode");
  expect_config_error(mutated("output", "snapshots", -1), "snapshots");

  json doc = full_document();
  doc["coefficients"]["reaction"]["regions"][0]["radius"] = -0.1;
  expect_config_error(doc, "radius");

  doc = full_document();
  doc["coefficients"]["reaction"]["regions"][1]["side_x"] = 0.0;
  expect_config_error(doc, "side");

  doc = full_document();
  doc["coefficients"]["reaction"]["regions"][0]["shape"] = "hexagon";
  expect_config_error(doc, "shape");
}

TEST_CASE("renaming any key anywhere is an error that names the key") {
  const json doc = full_document();
  std::vector<std::pair<std::string, std::string>> paths;
  collect_key_paths(doc, "", paths);
  REQUIRE(paths.size() > 30);  // the document really is exhaustive

  for (const auto& [parent_path, key] : paths) {
    json mutated = doc;
    json& parent = parent_path.empty() ? mutated : mutated.at(json::json_pointer(parent_path));
    json value = parent.at(key);
    parent.erase(key);
    parent[key + "_oops"] = std::move(value);
    expect_config_error(mutated, key + "_oops");
  }
}

TEST_CASE("the shipped configuration files parse") {
  const fs::path dir = REACTID_CONFIG_DIR;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    const RunConfig cfg = reactid::load_config(entry.path().string());
    CHECK(cfg.nx >= 1);
    CHECK(cfg.build_grid().steps >= 1);
    // Every shipped config models the unit-square benchmark problem.
    CHECK(cfg.x_length == 1.0);
    REQUIRE(cfg.reaction.has_value());
    CHECK((*cfg.reaction)(0.6, 0.4) == 5.0);
  }
  CHECK(seen >= 4);

  CHECK_THROWS_AS(reactid::load_config((dir / "does_not_exist.json").string()), ConfigError);
}
