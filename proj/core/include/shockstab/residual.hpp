#pragma once

#include <array>
#include <string>

#include <Eigen/Core>

#include "shockstab/boundary.hpp"
#include "shockstab/mesh.hpp"
#include "shockstab/reconstruction.hpp"
#include "shockstab/riemann.hpp"
#include "shockstab/state.hpp"

namespace shockstab {

/// Everything that defines the semi-discrete operator besides the grid and
/// the state.
struct Discretization {
  ReconstructionScheme scheme;
  RiemannSolver solver = RiemannSolver::roe;
  SolverOptions solver_options;
  BoundaryConditionSet bc;
  /// Faces whose stencil reaches into ghost cells use first-order states.
  bool first_order_at_boundary = false;
  /// Faces whose reconstructed states are non-physical revert to first order
  /// instead of raising an error.
  bool fallback_first_order = true;
};

enum class Direction { i, j };

/// One cell interface with its four-cell stencil along the face-normal grid
/// line. Stencil coordinates may lie up to two cells outside the interior.
struct FaceRef {
  Direction dir = Direction::i;
  int i = 0;  ///< face index in metrics (i_face or j_face)
  int j = 0;
  std::array<std::array<int, 2>, 4> stencil{};  ///< (i, j) of cells i-1, i, i+1, i+2
  int left_cell = -1;                           ///< interior index of the lower cell, -1 on a boundary
  int right_cell = -1;                          ///< interior index of the upper cell, -1 on a boundary

  std::string label() const;
};

/// Calls fn(const FaceRef&, const Face&) for every interface of the grid,
/// i-faces first then j-faces, in storage order.
template <typename Fn>
void for_each_face(const GridMetrics& metrics, Fn&& fn) {
  const int ni = metrics.ni();
  const int nj = metrics.nj();
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i <= ni; ++i) {
      FaceRef f;
      f.dir = Direction::i;
      f.i = i;
      f.j = j;
      for (int k = 0; k < 4; ++k) f.stencil[static_cast<std::size_t>(k)] = {i - 2 + k, j};
      f.left_cell = i > 0 ? (i - 1) + j * ni : -1;
      f.right_cell = i < ni ? i + j * ni : -1;
      fn(static_cast<const FaceRef&>(f), metrics.i_face(i, j));
    }
  }
  for (int j = 0; j <= nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      FaceRef f;
      f.dir = Direction::j;
      f.i = i;
      f.j = j;
      for (int k = 0; k < 4; ++k) f.stencil[static_cast<std::size_t>(k)] = {i, j - 2 + k};
      f.left_cell = j > 0 ? i + (j - 1) * ni : -1;
      f.right_cell = j < nj ? i + j * ni : -1;
      fn(static_cast<const FaceRef&>(f), metrics.j_face(i, j));
    }
  }
}

/// Ghost-extended read access to a field.
class ExtendedField {
 public:
  ExtendedField(const FlowField& field, const GhostField& ghosts) : field_(field), ghosts_(ghosts) {}

  bool is_interior(int i, int j) const { return i >= 0 && i < field_.ni() && j >= 0 && j < field_.nj(); }
  const State& at(int i, int j) const;

 private:
  const FlowField& field_;
  const GhostField& ghosts_;
};

/// Side and layer of a ghost coordinate; valid only when the coordinate lies
/// outside the interior in exactly one direction.
struct GhostCoord {
  Side side;
  int layer;
  int along;
};
GhostCoord ghost_coord(int i, int j, int ni, int nj);

/// Whether the face uses first-order reconstruction under `disc` because its
/// stencil reaches the boundary.
bool face_uses_boundary_order(const FaceRef& face, const GridMetrics& metrics, const Discretization& disc);

/// Interface states of a face as the residual sees them, including the
/// boundary-order and non-physical fallbacks.
InterfaceStates face_states(const FaceStencil& stencil, bool boundary_order, const Discretization& disc,
                            const GasModel& gas);

/// Numerical flux through one face from its stencil.
Flux face_flux(const FaceStencil& stencil, bool boundary_order, const Discretization& disc, const GasModel& gas);

/// Semi-discrete right-hand side dU/dt = -(1/|Omega|) sum_k L_k F_k, returned
/// as a flat vector of 4 * cell_count entries (cell-major).
Eigen::VectorXd residual(const FlowField& field, const GhostField& ghosts, const GridMetrics& metrics,
                         const Discretization& disc);

/// Fills ghosts from disc.bc and evaluates the residual.
Eigen::VectorXd residual(const FlowField& field, const GridMetrics& metrics, const Discretization& disc);

/// Largest |residual| component.
double residual_norm_inf(const Eigen::VectorXd& r);

/// Per-cell sum over faces of (|q_n| + a) * L, used for CFL time steps.
/// When `i_only` is set only i-faces contribute.
Eigen::VectorXd spectral_radius_sum(const FlowField& field, const GridMetrics& metrics, bool i_only = false);

}  // namespace shockstab
