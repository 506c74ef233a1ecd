#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tdgl/errors.hpp"
#include "tdgl/mesh.hpp"

namespace tdgl {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Line cursor over the whole file text.
class Lines {
 public:
  explicit Lines(std::string_view text) : text_(text) {}

  bool next(std::string& out) {
    while (pos_ <= text_.size()) {
      if (pos_ == text_.size()) return false;
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      out = trim(text_.substr(pos_, end - pos_));
      pos_ = end + 1;
      ++line_;
      if (!out.empty()) return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string s;
    if (!next(s)) throw MeshError(MeshError::Kind::Malformed, std::string("unexpected end of file, expected ") + what);
    return s;
  }

  int line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

[[noreturn]] void malformed(const Lines& in, const std::string& what) {
  throw MeshError(MeshError::Kind::Malformed, "line " + std::to_string(in.line()) + ": " + what);
}

}  // namespace

Mesh load_gmsh_ascii(std::string_view text, GmshReport* report) {
  Lines in(text);
  GmshReport rep;
  std::string line;
  bool have_format = false;
  std::map<long, Vec2> nodes;
  std::vector<long> node_order;
  std::vector<std::array<long, 3>> triangles;
  std::vector<std::array<long, 2>> segments;

  while (in.next(line)) {
    if (line == "$MeshFormat") {
      std::istringstream ss(in.require("format line"));
      std::string version;
      int file_type = -1, data_size = 0;
      if (!(ss >> version >> file_type >> data_size)) malformed(in, "bad $MeshFormat line");
      if (file_type != 0) throw MeshError(MeshError::Kind::UnsupportedFormat, "binary Gmsh files are not supported");
      if (version.rfind("2.", 0) != 0)
        throw MeshError(MeshError::Kind::UnsupportedFormat, "Gmsh format version " + version + " is not supported");
      if (in.require("$EndMeshFormat") != "$EndMeshFormat") malformed(in, "expected $EndMeshFormat");
      have_format = true;
    } else if (line == "$Nodes") {
      long count = 0;
      if (!(std::istringstream(in.require("node count")) >> count) || count < 0) malformed(in, "bad node count");
      for (long k = 0; k < count; ++k) {
        std::istringstream ss(in.require("node"));
        long id;
        double x, y, z;
        if (!(ss >> id >> x >> y >> z)) malformed(in, "bad node record");
        if (!nodes.emplace(id, Vec2{x, y}).second) malformed(in, "duplicate node id " + std::to_string(id));
        node_order.push_back(id);
      }
      if (in.require("$EndNodes") != "$EndNodes") malformed(in, "expected $EndNodes");
      rep.nodes_read = static_cast<int>(count);
    } else if (line == "$Elements") {
      long count = 0;
      if (!(std::istringstream(in.require("element count")) >> count) || count < 0) malformed(in, "bad element count");
      for (long k = 0; k < count; ++k) {
        std::istringstream ss(in.require("element"));
        long id, type, ntags;
        if (!(ss >> id >> type >> ntags) || ntags < 0) malformed(in, "bad element record");
        for (long t = 0; t < ntags; ++t) {
          long tag;
          if (!(ss >> tag)) malformed(in, "bad element tags");
        }
        if (type == 2) {
          std::array<long, 3> tri;
          if (!(ss >> tri[0] >> tri[1] >> tri[2])) malformed(in, "bad triangle nodes");
          triangles.push_back(tri);
        } else if (type == 1) {
          std::array<long, 2> seg;
          if (!(ss >> seg[0] >> seg[1])) malformed(in, "bad line nodes");
          segments.push_back(seg);
        }
      }
      if (in.require("$EndElements") != "$EndElements") malformed(in, "expected $EndElements");
    } else if (!line.empty() && line[0] == '$') {
      // Skip unknown sections such as $PhysicalNames.
      const std::string end = "$End" + line.substr(1);
      std::string inner;
      while (true) {
        if (!in.next(inner)) malformed(in, "unterminated section " + line);
        if (inner == end) break;
      }
    }
  }
  if (!have_format) throw MeshError(MeshError::Kind::Malformed, "missing $MeshFormat section");
  if (triangles.empty()) throw MeshError(MeshError::Kind::Empty, "file contains no triangles");

  // Dense re-indexing in file node order, keeping only nodes used by triangles.
  std::set<long> used;
  for (const auto& t : triangles)
    for (long id : t) {
      if (!nodes.count(id))
        throw MeshError(MeshError::Kind::Malformed, "triangle references unknown node " + std::to_string(id));
      used.insert(id);
    }
  std::map<long, int> index;
  std::vector<Vec2> vertices;
  for (long id : node_order)
    if (used.count(id)) {
      index[id] = static_cast<int>(vertices.size());
      vertices.push_back(nodes[id]);
    }
  std::vector<Cell> cells;
  cells.reserve(triangles.size());
  for (const auto& t : triangles) {
    Cell c{index[t[0]], index[t[1]], index[t[2]]};
    if (signed_area(vertices[c[0]], vertices[c[1]], vertices[c[2]]) < 0.0) ++rep.flipped_cells;
    cells.push_back(c);
  }
  Mesh mesh = Mesh::from_cells(std::move(vertices), std::move(cells));

  std::set<std::pair<int, int>> boundary;
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (mesh.boundary_edge_flags()[e]) boundary.insert({mesh.edges()[e].a, mesh.edges()[e].b});
  rep.triangles_read = static_cast<int>(triangles.size());
  rep.lines_read = static_cast<int>(segments.size());
  for (const auto& s : segments) {
    auto ia = index.find(s[0]), ib = index.find(s[1]);
    if (ia == index.end() || ib == index.end()) {
      ++rep.lines_not_on_boundary;
      continue;
    }
    std::pair<int, int> key{std::min(ia->second, ib->second), std::max(ia->second, ib->second)};
    if (!boundary.count(key)) ++rep.lines_not_on_boundary;
  }
  if (report) *report = rep;
  return mesh;
}

Mesh load_native(std::string_view text) {
  std::istringstream ss{std::string(text)};
  std::string magic;
  int version = 0;
  if (!(ss >> magic >> version) || magic != "tdgl-mesh")
    throw MeshError(MeshError::Kind::UnsupportedFormat, "missing 'tdgl-mesh' header");
  if (version != 1) throw MeshError(MeshError::Kind::UnsupportedFormat, "unsupported native mesh version");
  long nv = -1;
  if (!(ss >> nv) || nv < 0) throw MeshError(MeshError::Kind::Malformed, "bad vertex count");
  std::vector<Vec2> vertices(nv);
  for (auto& p : vertices)
    if (!(ss >> p.x >> p.y)) throw MeshError(MeshError::Kind::Malformed, "truncated vertex list");
  long nc = -1;
  if (!(ss >> nc) || nc < 0) throw MeshError(MeshError::Kind::Malformed, "bad cell count");
  if (nc == 0) throw MeshError(MeshError::Kind::Empty, "mesh has no cells");
  std::vector<Cell> cells(nc);
  for (auto& c : cells)
    if (!(ss >> c[0] >> c[1] >> c[2])) throw MeshError(MeshError::Kind::Malformed, "truncated cell list");
  return Mesh::from_cells(std::move(vertices), std::move(cells));
}

std::string write_native(const Mesh& mesh) {
  std::string out = "tdgl-mesh 1\n" + std::to_string(mesh.num_vertices()) + "\n";
  char buf[96];
  for (const auto& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out += buf;
  }
  out += std::to_string(mesh.num_cells()) + "\n";
  for (const auto& c : mesh.cells())
    out += std::to_string(c[0]) + " " + std::to_string(c[1]) + " " + std::to_string(c[2]) + "\n";
  return out;
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open mesh file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 9, "tdgl-mesh") == 0) return load_native(text);
  return load_gmsh_ascii(text);
}

}  // namespace tdgl
