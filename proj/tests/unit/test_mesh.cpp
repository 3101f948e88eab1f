#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "shockstab/error.hpp"
#include "shockstab/mesh.hpp"

using namespace shockstab;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "shockstab_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

Grid single_cell(Point a, Point b, Point c, Point d) { return Grid(2, 2, {a, b, d, c}); }

Grid perturbed_grid(int ni, int nj, double jitter, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shift(-jitter, jitter);
  std::vector<Point> nodes;
  for (int j = 0; j <= nj; ++j) {
    for (int i = 0; i <= ni; ++i) nodes.push_back({i + shift(rng), j + shift(rng)});
  }
  return Grid(ni + 1, nj + 1, nodes);
}

void expect_closed(const GridMetrics& m, int i, int j, double tol) {
  const Face& w = m.i_face(i, j);
  const Face& e = m.i_face(i + 1, j);
  const Face& s = m.j_face(i, j);
  const Face& n = m.j_face(i, j + 1);
  // Outward normals: -n on the low faces, +n on the high faces.
  const double sx = e.length * e.nx - w.length * w.nx + n.length * n.nx - s.length * s.nx;
  const double sy = e.length * e.ny - w.length * w.ny + n.length * n.ny - s.length * s.ny;
  EXPECT_NEAR(sx, 0.0, tol);
  EXPECT_NEAR(sy, 0.0, tol);
}

}  // namespace

TEST(ReadGrid, UnitSquareFileGivesOneCell) {
  const auto path = scratch("unit_square.dat");
  write_text(path, "2 2\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n");
  const Grid g = read_grid(path);
  EXPECT_EQ(g.ni_cells(), 1);
  EXPECT_EQ(g.nj_cells(), 1);
  EXPECT_EQ(g.node(1, 0), (Point{1, 0}));
  EXPECT_EQ(g.node(0, 1), (Point{0, 1}));
}

TEST(ReadGrid, ElevenByElevenCellsFromTwelveNodes) {
  const auto path = scratch("cart11.dat");
  write_grid(cartesian_grid(11, 11), path);
  const Grid g = read_grid(path);
  EXPECT_EQ(g.ni_nodes(), 12);
  EXPECT_EQ(g.ni_cells(), 11);
  EXPECT_EQ(g.nj_cells(), 11);
}

TEST(ReadGrid, NonPlanarZIsRejected) {
  const auto path = scratch("nonplanar.dat");
  write_text(path, "2 2\n0 0 0\n1 0 0.5\n0 1 0\n1 1 0\n");
  try {
    read_grid(path);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), Module::mesh);
    EXPECT_NE(e.detail().find("non-planar grid"), std::string::npos);
  }
}

TEST(ReadGrid, MissingFileMalformedRecordAndCountMismatch) {
  EXPECT_THROW(read_grid(scratch("does_not_exist.dat")), Error);
  const auto bad = scratch("malformed.dat");
  write_text(bad, "2 2\n0 0 0\n1 x 0\n0 1 0\n1 1 0\n");
  EXPECT_THROW(read_grid(bad), Error);
  const auto short_file = scratch("short.dat");
  write_text(short_file, "2 2\n0 0 0\n1 0 0\n0 1 0\n");
  EXPECT_THROW(read_grid(short_file), Error);
  const auto long_file = scratch("long.dat");
  write_text(long_file, "2 2\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n2 2 0\n");
  EXPECT_THROW(read_grid(long_file), Error);
}

TEST(ReadGrid, RoundTripIsIdentity) {
  const Grid g = perturbed_grid(7, 5, 0.2, 11);
  const auto path = scratch("roundtrip.dat");
  write_grid(g, path);
  EXPECT_EQ(read_grid(path), g);
}

TEST(Grid, RejectsTooFewNodes) {
  EXPECT_THROW(Grid(1, 2, {{0, 0}, {0, 1}}), Error);
  EXPECT_THROW(Grid(2, 2, {{0, 0}, {1, 0}, {0, 1}}), Error);
}

TEST(ComputeMetrics, UnitSquare) {
  const GridMetrics m = compute_metrics(single_cell({0, 0}, {1, 0}, {1, 1}, {0, 1}));
  EXPECT_DOUBLE_EQ(m.volume(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(m.i_face(0, 0).length, 1.0);
  EXPECT_DOUBLE_EQ(m.j_face(0, 0).length, 1.0);
  EXPECT_NEAR(m.i_face(0, 0).nx, 1.0, 1e-15);
  EXPECT_NEAR(m.i_face(0, 0).ny, 0.0, 1e-15);
  EXPECT_NEAR(m.j_face(0, 1).nx, 0.0, 1e-15);
  EXPECT_NEAR(m.j_face(0, 1).ny, 1.0, 1e-15);
}

TEST(ComputeMetrics, Rectangle) {
  const GridMetrics m = compute_metrics(single_cell({0, 0}, {2, 0}, {2, 1}, {0, 1}));
  EXPECT_DOUBLE_EQ(m.volume(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(m.i_face(0, 0).length, 1.0);
  EXPECT_DOUBLE_EQ(m.i_face(1, 0).length, 1.0);
  EXPECT_DOUBLE_EQ(m.j_face(0, 0).length, 2.0);
  EXPECT_DOUBLE_EQ(m.j_face(0, 1).length, 2.0);
}

TEST(ComputeMetrics, SkewedQuadShoelace) {
  const GridMetrics m = compute_metrics(single_cell({0, 0}, {1, 0}, {1.2, 1}, {0.1, 1}));
  EXPECT_NEAR(m.volume(0, 0), 1.05, 1e-14);
  expect_closed(m, 0, 0, 1e-12);
}

TEST(ComputeMetrics, DegenerateAndClockwiseCellsRejected) {
  EXPECT_THROW(compute_metrics(single_cell({0, 0}, {1, 0}, {2, 0}, {3, 0})), Error);
  EXPECT_THROW(compute_metrics(single_cell({0, 0}, {0, 1}, {1, 1}, {1, 0})), Error);
}

TEST(ComputeMetricsProperty, ClosedPolygonIdentityOnPerturbedGrids) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GridMetrics m = compute_metrics(perturbed_grid(6, 4, 0.25, seed));
    for (int j = 0; j < m.nj(); ++j) {
      for (int i = 0; i < m.ni(); ++i) expect_closed(m, i, j, 1e-12);
    }
  }
}

TEST(ComputeMetricsProperty, VolumesEqualShoelaceAndSumToDomainArea) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int ni = 6;
    const int nj = 4;
    const Grid g = perturbed_grid(ni, nj, 0.25, seed);
    const GridMetrics m = compute_metrics(g);
    double total = 0.0;
    for (int j = 0; j < nj; ++j) {
      for (int i = 0; i < ni; ++i) {
        const Point quad[] = {g.node(i, j), g.node(i + 1, j), g.node(i + 1, j + 1), g.node(i, j + 1)};
        double twice = 0.0;
        for (int k = 0; k < 4; ++k) twice += quad[k].x * quad[(k + 1) % 4].y - quad[(k + 1) % 4].x * quad[k].y;
        EXPECT_NEAR(m.volume(i, j), 0.5 * twice, 1e-13);
        EXPECT_GT(m.volume(i, j), 0.0);
        total += m.volume(i, j);
      }
    }
    std::vector<Point> outline;
    for (int i = 0; i <= ni; ++i) outline.push_back(g.node(i, 0));
    for (int j = 1; j <= nj; ++j) outline.push_back(g.node(ni, j));
    for (int i = ni - 1; i >= 0; --i) outline.push_back(g.node(i, nj));
    for (int j = nj - 1; j >= 1; --j) outline.push_back(g.node(0, j));
    EXPECT_NEAR(total, shoelace_area(outline), 1e-10);
  }
}

TEST(ComputeMetricsProperty, SharedFaceNormalsAreOpposite) {
  // A face is stored once: the lower cell sees +n, the upper cell -n, so the
  // two outward normals cancel by construction. Check that the stored normal
  // points from the lower to the upper cell centroid.
  const GridMetrics m = compute_metrics(perturbed_grid(5, 5, 0.2, 3));
  for (int j = 0; j < 5; ++j) {
    for (int i = 1; i < 5; ++i) {
      const Face& f = m.i_face(i, j);
      const Point a = m.centroid(i - 1, j);
      const Point b = m.centroid(i, j);
      EXPECT_GT(f.nx * (b.x - a.x) + f.ny * (b.y - a.y), 0.0);
      EXPECT_NEAR(std::hypot(f.nx, f.ny), 1.0, 1e-14);
    }
  }
  for (int j = 1; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) {
      const Face& f = m.j_face(i, j);
      const Point a = m.centroid(i, j - 1);
      const Point b = m.centroid(i, j);
      EXPECT_GT(f.nx * (b.x - a.x) + f.ny * (b.y - a.y), 0.0);
    }
  }
}

TEST(CartesianGrid, SpacingFollowsDomain) {
  const GridMetrics m = compute_metrics(cartesian_grid(50, 10, 50.0, 50.0));
  EXPECT_DOUBLE_EQ(m.volume(3, 3), 5.0);
  EXPECT_DOUBLE_EQ(m.i_face(3, 3).length, 5.0);
  EXPECT_DOUBLE_EQ(m.j_face(3, 3).length, 1.0);
  EXPECT_THROW(cartesian_grid(0, 3, 1.0, 1.0), Error);
}
