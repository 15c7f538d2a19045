#include "reactid/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace reactid {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

double parse_double(const std::string& token, const std::string& path, int line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::runtime_error(path + ": malformed number '" + token + "' on line " +
                             std::to_string(line));
  return v;
}

}  // namespace

void write_field_csv(const std::string& path, const Mesh& mesh, const NodeField& values) {
  if (values.size() != static_cast<std::size_t>(mesh.node_count()))
    throw std::invalid_argument("write_field_csv: field size does not match the mesh");
  std::ofstream out = open_out(path);
  out << "x1,x2,value\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out << fmt17(mesh.nodes[i][0]) << ',' << fmt17(mesh.nodes[i][1]) << ',' << fmt17(values[i])
        << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

NodeField read_field_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x1,x2,value")
    throw std::runtime_error(path + ": expected header 'x1,x2,value', got '" + line + "'");

  NodeField values;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string x1, x2, value;
    if (!std::getline(row, x1, ',') || !std::getline(row, x2, ',') ||
        !std::getline(row, value) || value.find(',') != std::string::npos)
      throw std::runtime_error(path + ": expected 3 comma-separated fields on line " +
                               std::to_string(lineno));
    parse_double(x1, path, lineno);
    parse_double(x2, path, lineno);
    values.push_back(parse_double(value, path, lineno));
  }
  return values;
}

NodeField read_psi_for_mesh(const std::string& path, const Mesh& mesh) {
  NodeField values = read_field_csv(path);
  if (values.size() != static_cast<std::size_t>(mesh.node_count()))
    throw std::runtime_error(path + ": " + std::to_string(values.size()) +
                             " records do not match the mesh's " +
                             std::to_string(mesh.node_count()) + " nodes");
  return values;
}

void write_vtk(const std::string& path, const Mesh& mesh, const NodeField& values,
               const std::string& field_name) {
  if (values.size() != static_cast<std::size_t>(mesh.node_count()))
    throw std::invalid_argument("write_vtk: field size does not match the mesh");
  std::ofstream out = open_out(path);
  out << "# vtk DataFile Version 3.0\n";
  out << field_name << "\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.node_count() << " double\n";
  for (const auto& p : mesh.nodes) out << fmt17(p[0]) << ' ' << fmt17(p[1]) << " 0\n";
  out << "CELLS " << mesh.triangle_count() << ' ' << 4 * mesh.triangle_count() << "\n";
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.triangle_count() << "\n";
  for (int t = 0; t < mesh.triangle_count(); ++t) out << "5\n";
  out << "POINT_DATA " << mesh.node_count() << "\n";
  out << "SCALARS " << field_name << " double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (double v : values) out << fmt17(v) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_convergence_csv(const std::string& path, const std::vector<IterationRecord>& history) {
  std::ofstream out = open_out(path);
  out << "k,eps_inf,eps_2,delta_c_inf,min_c,max_increase\n";
  for (const IterationRecord& rec : history)
    out << rec.k << ',' << fmt17(rec.eps_inf) << ',' << fmt17(rec.eps_2) << ','
        << fmt17(rec.delta_c_inf) << ',' << fmt17(rec.min_c) << ',' << fmt17(rec.max_increase)
        << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace reactid
