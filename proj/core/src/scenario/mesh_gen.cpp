// SPDX-License-Identifier: Apache-2.0

#include "anidamage/scenario/mesh_gen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace anidamage {
namespace scenario {

using fem::Mesh;

Mesh box_mesh(int nx, int ny, int nz, double sx, double sy, double sz) {
  if (nx < 1 || ny < 1 || nz < 1)
    throw MeshGenerationFailed("box mesh needs at least one element per direction");
  Mesh m;
  const int npx = nx + 1, npy = ny + 1, npz = nz + 1;
  auto node_id = [&](int i, int j, int k) { return (k * npy + j) * npx + i; };
  m.nodes.reserve(static_cast<size_t>(npx * npy * npz));
  for (int k = 0; k < npz; ++k)
    for (int j = 0; j < npy; ++j)
      for (int i = 0; i < npx; ++i)
        m.nodes.push_back({sx * i / nx, sy * j / ny, sz * k / nz});
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        m.elements.push_back({node_id(i, j, k), node_id(i + 1, j, k),
                              node_id(i + 1, j + 1, k), node_id(i, j + 1, k),
                              node_id(i, j, k + 1), node_id(i + 1, j, k + 1),
                              node_id(i + 1, j + 1, k + 1), node_id(i, j + 1, k + 1)});

  auto& bottom = m.node_sets["bottom"];
  auto& top = m.node_sets["top"];
  auto& left = m.node_sets["left"];
  auto& right = m.node_sets["right"];
  auto& front = m.node_sets["front"];
  auto& back = m.node_sets["back"];
  for (int k = 0; k < npz; ++k)
    for (int j = 0; j < npy; ++j)
      for (int i = 0; i < npx; ++i) {
        const int id = node_id(i, j, k);
        if (k == 0) bottom.push_back(id);
        if (k == nz) top.push_back(id);
        if (i == 0) left.push_back(id);
        if (i == nx) right.push_back(id);
        if (j == 0) front.push_back(id);
        if (j == ny) back.push_back(id);
      }

  auto& top_faces = m.face_sets["top_faces"];
  auto& bottom_faces = m.face_sets["bottom_faces"];
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      top_faces.push_back({((nz - 1) * ny + j) * nx + i, 1});
      bottom_faces.push_back({(0 * ny + j) * nx + i, 0});
    }
  return m;
}

Mesh notched_mesh(int nx, int ny, NotchedLayout* layout) {
  if (nx < 2 || ny < 8)
    throw MeshGenerationFailed("notched mesh needs nx >= 2 and ny >= 8");
  NotchedLayout lay;
  lay.nx = nx;
  lay.ny = ny;
  if (layout) *layout = lay;

  const double L = lay.length, W = lay.width, R = lay.radius;
  auto xmin = [&](double y) {
    const double d = y - lay.y_left;
    return std::abs(d) < R ? std::sqrt(R * R - d * d) : 0.0;
  };
  auto xmax = [&](double y) {
    const double d = y - lay.y_right;
    return W - (std::abs(d) < R ? std::sqrt(R * R - d * d) : 0.0);
  };

  Mesh m;
  const int npx = nx + 1, npy = ny + 1;
  auto node_id = [&](int i, int j, int layer) {
    return layer * npx * npy + j * npx + i;
  };
  m.nodes.resize(static_cast<size_t>(2 * npx * npy));
  for (int layer = 0; layer < 2; ++layer)
    for (int j = 0; j < npy; ++j) {
      const double y = L * j / ny;
      const double x0 = xmin(y), x1 = xmax(y);
      for (int i = 0; i < npx; ++i) {
        const double x = x0 + (x1 - x0) * i / nx;
        m.nodes[static_cast<size_t>(node_id(i, j, layer))] = {x, y, static_cast<double>(layer)};
      }
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      m.elements.push_back({node_id(i, j, 0), node_id(i + 1, j, 0),
                            node_id(i + 1, j + 1, 0), node_id(i, j + 1, 0),
                            node_id(i, j, 1), node_id(i + 1, j, 1),
                            node_id(i + 1, j + 1, 1), node_id(i, j + 1, 1)});

  auto& bottom = m.node_sets["bottom"];
  auto& top = m.node_sets["top"];
  for (int layer = 0; layer < 2; ++layer)
    for (int i = 0; i < npx; ++i) {
      bottom.push_back(node_id(i, 0, layer));
      top.push_back(node_id(i, ny, layer));
    }
  fem::validate_mesh(m);
  return m;
}

void notched_level_dims(const std::string& level, int& nx, int& ny) {
  if (level == "coarse") {
    nx = 8;
    ny = 50;
  } else if (level == "medium") {
    nx = 12;
    ny = 75;
  } else if (level == "fine") {
    nx = 16;
    ny = 100;
  } else {
    throw ConfigError("unknown notched mesh level '" + level +
                      "' (expected coarse, medium or fine)");
  }
}

std::vector<int> nodes_where(const Mesh& mesh,
                             const std::function<bool(const Vec3&)>& pred) {
  std::vector<int> out;
  for (int a = 0; a < mesh.n_nodes(); ++a)
    if (pred(mesh.nodes[static_cast<size_t>(a)])) out.push_back(a);
  return out;
}

// --- plain-text format -------------------------------------------------------

Mesh read_mesh_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path.string());
  Mesh m;
  std::string line;
  auto next_tokens = [&](std::istringstream& iss) -> bool {
    while (std::getline(in, line)) {
      const auto h = line.find('#');
      if (h != std::string::npos) line.resize(h);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      iss = std::istringstream(line);
      return true;
    }
    return false;
  };

  std::istringstream iss;
  while (next_tokens(iss)) {
    std::string key;
    iss >> key;
    if (key == "nodes") {
      int n = 0;
      iss >> n;
      m.nodes.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        std::istringstream row;
        if (!next_tokens(row)) throw IoError("mesh file truncated in nodes block");
        Vec3 x;
        row >> x[0] >> x[1] >> x[2];
        if (!row) throw IoError("bad node line in " + path.string());
        m.nodes.push_back(x);
      }
    } else if (key == "elements") {
      int n = 0;
      iss >> n;
      m.elements.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        std::istringstream row;
        if (!next_tokens(row)) throw IoError("mesh file truncated in elements block");
        std::array<int, 8> conn{};
        for (int a = 0; a < 8; ++a) row >> conn[static_cast<size_t>(a)];
        if (!row) throw IoError("bad element line in " + path.string());
        m.elements.push_back(conn);
      }
    } else if (key == "nodeset" || key == "elemset") {
      std::string name;
      int n = 0;
      iss >> name >> n;
      std::vector<int>& set =
          key == "nodeset" ? m.node_sets[name] : m.element_sets[name];
      set.reserve(static_cast<size_t>(n));
      while (static_cast<int>(set.size()) < n) {
        std::istringstream row;
        if (!next_tokens(row)) throw IoError("mesh file truncated in set " + name);
        int id;
        while (row >> id) set.push_back(id);
      }
    } else if (key == "faceset") {
      std::string name;
      int n = 0;
      iss >> name >> n;
      auto& set = m.face_sets[name];
      for (int i = 0; i < n; ++i) {
        std::istringstream row;
        if (!next_tokens(row)) throw IoError("mesh file truncated in faceset " + name);
        std::array<int, 2> ef{};
        row >> ef[0] >> ef[1];
        set.push_back(ef);
      }
    } else {
      throw IoError("unknown mesh block '" + key + "' in " + path.string());
    }
  }
  fem::validate_mesh(m);
  return m;
}

void write_mesh_text(const Mesh& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file " + path.string());
  out << "# anidamage mesh (hex8)\n";
  out << "nodes " << m.n_nodes() << "\n";
  out.precision(17);
  for (const auto& x : m.nodes) out << x[0] << " " << x[1] << " " << x[2] << "\n";
  out << "elements " << m.n_elements() << "\n";
  for (const auto& e : m.elements) {
    for (int a = 0; a < 8; ++a) out << e[static_cast<size_t>(a)] << (a == 7 ? "\n" : " ");
  }
  for (const auto& [name, set] : m.node_sets) {
    out << "nodeset " << name << " " << set.size() << "\n";
    for (size_t i = 0; i < set.size(); ++i)
      out << set[i] << ((i + 1) % 16 == 0 || i + 1 == set.size() ? "\n" : " ");
  }
  for (const auto& [name, set] : m.element_sets) {
    out << "elemset " << name << " " << set.size() << "\n";
    for (size_t i = 0; i < set.size(); ++i)
      out << set[i] << ((i + 1) % 16 == 0 || i + 1 == set.size() ? "\n" : " ");
  }
  for (const auto& [name, set] : m.face_sets) {
    out << "faceset " << name << " " << set.size() << "\n";
    for (const auto& ef : set) out << ef[0] << " " << ef[1] << "\n";
  }
}

// --- gmsh v2.2 ---------------------------------------------------------------

Mesh read_mesh_gmsh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path.string());
  Mesh m;
  std::map<int, int> id_map;  // gmsh node id -> index
  std::map<int, std::string> phys_names;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("$MeshFormat", 0) == 0) {
      std::getline(in, line);
      std::istringstream iss(line);
      double version = 0;
      iss >> version;
      if (version < 2.0 || version >= 3.0)
        throw IoError("unsupported gmsh format version in " + path.string());
      std::getline(in, line);  // $EndMeshFormat
    } else if (line.rfind("$PhysicalNames", 0) == 0) {
      std::getline(in, line);
      const int n = std::stoi(line);
      for (int i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream iss(line);
        int dim, tag;
        std::string name;
        iss >> dim >> tag >> name;
        if (name.size() >= 2 && name.front() == '"') name = name.substr(1, name.size() - 2);
        phys_names[tag] = name;
      }
      std::getline(in, line);
    } else if (line.rfind("$Nodes", 0) == 0) {
      std::getline(in, line);
      const int n = std::stoi(line);
      for (int i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream iss(line);
        int id;
        Vec3 x;
        iss >> id >> x[0] >> x[1] >> x[2];
        id_map[id] = m.n_nodes();
        m.nodes.push_back(x);
      }
      std::getline(in, line);
    } else if (line.rfind("$Elements", 0) == 0) {
      std::getline(in, line);
      const int n = std::stoi(line);
      for (int i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream iss(line);
        int id, type, ntags;
        iss >> id >> type >> ntags;
        int phys = 0;
        for (int tgi = 0; tgi < ntags; ++tgi) {
          int tag;
          iss >> tag;
          if (tgi == 0) phys = tag;
        }
        if (type != 5) continue;  // hexahedra only
        std::array<int, 8> conn{};
        for (int a = 0; a < 8; ++a) {
          int gmsh_id;
          iss >> gmsh_id;
          const auto it = id_map.find(gmsh_id);
          if (it == id_map.end())
            throw IoError("gmsh element references unknown node in " + path.string());
          conn[static_cast<size_t>(a)] = it->second;
        }
        const int eid = m.n_elements();
        m.elements.push_back(conn);
        if (phys != 0) {
          const auto nm = phys_names.count(phys) ? phys_names[phys]
                                                 : "phys" + std::to_string(phys);
          m.element_sets[nm].push_back(eid);
        }
      }
      std::getline(in, line);
    }
  }
  if (m.elements.empty())
    throw IoError("no hexahedral elements found in " + path.string());
  fem::validate_mesh(m);
  return m;
}

Mesh read_mesh_file(const std::filesystem::path& path) {
  if (path.extension() == ".msh") return read_mesh_gmsh(path);
  return read_mesh_text(path);
}

}  // namespace scenario
}  // namespace anidamage
