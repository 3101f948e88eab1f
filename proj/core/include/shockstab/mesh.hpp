#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace shockstab {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

/// Structured quadrilateral grid. Nodes are stored i-fastest: node (i, j) lives
/// at index i + j * ni_nodes. Cell (i, j) is bounded by nodes (i,j), (i+1,j),
/// (i+1,j+1), (i,j+1) in counterclockwise order.
class Grid {
 public:
  Grid(int ni_nodes, int nj_nodes, std::vector<Point> nodes);

  int ni_nodes() const noexcept { return ni_nodes_; }
  int nj_nodes() const noexcept { return nj_nodes_; }
  int ni_cells() const noexcept { return ni_nodes_ - 1; }
  int nj_cells() const noexcept { return nj_nodes_ - 1; }

  const Point& node(int i, int j) const { return nodes_[static_cast<std::size_t>(i + j * ni_nodes_)]; }
  std::span<const Point> nodes() const noexcept { return nodes_; }

  bool operator==(const Grid&) const = default;

 private:
  int ni_nodes_;
  int nj_nodes_;
  std::vector<Point> nodes_;
};

/// Geometry of one cell interface. The normal is the unit normal pointing in
/// the direction of increasing grid index (from cell i-1 to cell i for an
/// i-face, from cell j-1 to cell j for a j-face).
struct Face {
  double length = 0.0;
  double nx = 0.0;
  double ny = 0.0;
};

/// Volumes and face geometry of a Grid.
///
/// i-face (i, j), 0 <= i <= ni, 0 <= j < nj, lies on the node line i between
/// nodes (i,j) and (i,j+1); it separates cells (i-1,j) and (i,j). j-face (i, j),
/// 0 <= i < ni, 0 <= j <= nj, lies between nodes (i,j) and (i+1,j) and
/// separates cells (i,j-1) and (i,j). A face is stored once and shared by both
/// neighbours; the outward normal seen from the lower-index cell is +n and from
/// the higher-index cell is -n.
class GridMetrics {
 public:
  int ni() const noexcept { return ni_; }
  int nj() const noexcept { return nj_; }
  int cell_count() const noexcept { return ni_ * nj_; }
  int cell_index(int i, int j) const noexcept { return i + j * ni_; }

  double volume(int i, int j) const { return volume_[static_cast<std::size_t>(cell_index(i, j))]; }
  Point centroid(int i, int j) const { return centroid_[static_cast<std::size_t>(cell_index(i, j))]; }
  const Face& i_face(int i, int j) const { return i_faces_[static_cast<std::size_t>(i + j * (ni_ + 1))]; }
  const Face& j_face(int i, int j) const { return j_faces_[static_cast<std::size_t>(i + j * ni_)]; }

 private:
  friend GridMetrics compute_metrics(const Grid& grid);

  int ni_ = 0;
  int nj_ = 0;
  std::vector<double> volume_;
  std::vector<Point> centroid_;
  std::vector<Face> i_faces_;
  std::vector<Face> j_faces_;
};

/// Reads the ASCII grid format: "<ni_nodes> <nj_nodes>" followed by
/// ni_nodes*nj_nodes records "<x> <y> <z>" in i-fastest order, with z == 0.
Grid read_grid(const std::filesystem::path& path);
void write_grid(const Grid& grid, const std::filesystem::path& path);

GridMetrics compute_metrics(const Grid& grid);

/// Uniform Cartesian grid of ni_cells x nj_cells covering [0,lx] x [0,ly].
Grid cartesian_grid(int ni_cells, int nj_cells, double lx, double ly);
inline Grid cartesian_grid(int ni_cells, int nj_cells) {
  return cartesian_grid(ni_cells, nj_cells, ni_cells, nj_cells);
}

/// Signed shoelace area of a polygon given in order.
double shoelace_area(std::span<const Point> polygon);

}  // namespace shockstab
