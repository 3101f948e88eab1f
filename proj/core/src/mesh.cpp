#include "shockstab/mesh.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "shockstab/error.hpp"

namespace shockstab {

namespace {

constexpr double kGeometryTol = 1e-12;

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

Face make_face(const Point& from, const Point& to, bool rotate_clockwise) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double length = std::hypot(dx, dy);
  if (length <= kGeometryTol) {
    throw Error(Module::mesh, "zero-length cell face");
  }
  // Clockwise rotation of the edge vector gives the right-hand normal.
  if (rotate_clockwise) return {length, dy / length, -dx / length};
  return {length, -dy / length, dx / length};
}

}  // namespace

Grid::Grid(int ni_nodes, int nj_nodes, std::vector<Point> nodes)
    : ni_nodes_(ni_nodes), nj_nodes_(nj_nodes), nodes_(std::move(nodes)) {
  if (ni_nodes_ < 2 || nj_nodes_ < 2) {
    throw Error(Module::mesh, "grid needs at least 2 nodes per direction, got " +
                                  std::to_string(ni_nodes_) + "x" + std::to_string(nj_nodes_));
  }
  if (nodes_.size() != static_cast<std::size_t>(ni_nodes_) * static_cast<std::size_t>(nj_nodes_)) {
    throw Error(Module::mesh, "node count mismatch: header declares " +
                                  std::to_string(ni_nodes_ * nj_nodes_) + " nodes, got " +
                                  std::to_string(nodes_.size()));
  }
}

double shoelace_area(std::span<const Point> polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& a = polygon[k];
    const Point& b = polygon[(k + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

Grid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Module::mesh, "cannot open grid file " + path.string());

  std::string line;
  std::size_t line_no = 0;
  auto next_record = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_record()) throw Error(Module::mesh, "empty grid file " + path.string());
  long ni = 0, nj = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> ni >> nj) || (header >> extra) || ni <= 0 || nj <= 0) {
      throw Error(Module::mesh, "malformed header at " + where(path, line_no) +
                                    ": expected two positive node counts");
    }
  }

  const std::size_t expected = static_cast<std::size_t>(ni) * static_cast<std::size_t>(nj);
  std::vector<Point> nodes;
  nodes.reserve(expected);
  while (next_record()) {
    std::istringstream rec(line);
    double x, y, z;
    std::string extra;
    if (!(rec >> x >> y >> z) || (rec >> extra)) {
      throw Error(Module::mesh, "malformed node record at " + where(path, line_no) +
                                    ": expected \"x y z\"");
    }
    if (std::abs(z) > kGeometryTol) {
      throw Error(Module::mesh, "non-planar grid: z = " + std::to_string(z) + " at " +
                                    where(path, line_no));
    }
    nodes.push_back({x, y});
  }
  if (nodes.size() != expected) {
    throw Error(Module::mesh, "node count mismatch in " + path.string() + ": header declares " +
                                  std::to_string(ni) + "x" + std::to_string(nj) + " = " +
                                  std::to_string(expected) + " nodes, file holds " +
                                  std::to_string(nodes.size()));
  }
  return Grid(static_cast<int>(ni), static_cast<int>(nj), std::move(nodes));
}

void write_grid(const Grid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Module::mesh, "cannot write grid file " + path.string());
  out << grid.ni_nodes() << ' ' << grid.nj_nodes() << '\n';
  out << std::setprecision(17);
  for (const Point& p : grid.nodes()) out << p.x << ' ' << p.y << " 0\n";
  if (!out) throw Error(Module::mesh, "write failed for " + path.string());
}

GridMetrics compute_metrics(const Grid& grid) {
  GridMetrics m;
  m.ni_ = grid.ni_cells();
  m.nj_ = grid.nj_cells();
  const auto ni = static_cast<std::size_t>(m.ni_);
  const auto nj = static_cast<std::size_t>(m.nj_);
  m.volume_.resize(ni * nj);
  m.centroid_.resize(ni * nj);
  m.i_faces_.resize((ni + 1) * nj);
  m.j_faces_.resize(ni * (nj + 1));

  for (int j = 0; j < m.nj_; ++j) {
    for (int i = 0; i < m.ni_; ++i) {
      const std::array<Point, 4> quad{grid.node(i, j), grid.node(i + 1, j), grid.node(i + 1, j + 1),
                                      grid.node(i, j + 1)};
      const double area = shoelace_area(quad);
      if (!(area > kGeometryTol)) {
        throw Error(Module::mesh, "degenerate or clockwise cell (" + std::to_string(i) + ", " +
                                      std::to_string(j) + "): area " + std::to_string(area));
      }
      const auto c = static_cast<std::size_t>(m.cell_index(i, j));
      m.volume_[c] = area;
      m.centroid_[c] = {0.25 * (quad[0].x + quad[1].x + quad[2].x + quad[3].x),
                        0.25 * (quad[0].y + quad[1].y + quad[2].y + quad[3].y)};
    }
  }
  for (int j = 0; j < m.nj_; ++j) {
    for (int i = 0; i <= m.ni_; ++i) {
      m.i_faces_[static_cast<std::size_t>(i + j * (m.ni_ + 1))] =
          make_face(grid.node(i, j), grid.node(i, j + 1), true);
    }
  }
  for (int j = 0; j <= m.nj_; ++j) {
    for (int i = 0; i < m.ni_; ++i) {
      m.j_faces_[static_cast<std::size_t>(i + j * m.ni_)] =
          make_face(grid.node(i, j), grid.node(i + 1, j), false);
    }
  }
  return m;
}

Grid cartesian_grid(int ni_cells, int nj_cells, double lx, double ly) {
  if (ni_cells < 1 || nj_cells < 1 || !(lx > 0.0) || !(ly > 0.0)) {
    throw Error(Module::mesh, "invalid Cartesian grid request");
  }
  std::vector<Point> nodes;
  nodes.reserve(static_cast<std::size_t>((ni_cells + 1) * (nj_cells + 1)));
  for (int j = 0; j <= nj_cells; ++j) {
    for (int i = 0; i <= ni_cells; ++i) {
      nodes.push_back({lx * i / ni_cells, ly * j / nj_cells});
    }
  }
  return Grid(ni_cells + 1, nj_cells + 1, std::move(nodes));
}

}  // namespace shockstab
