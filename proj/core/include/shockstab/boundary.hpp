#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "shockstab/mesh.hpp"
#include "shockstab/state.hpp"

namespace shockstab {

enum class BoundaryKind { supersonic_inflow, fixed_pressure_outflow, zero_gradient, slip_wall, periodic };

std::string_view to_string(BoundaryKind kind);
std::optional<BoundaryKind> parse_boundary_kind(std::string_view name);

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::zero_gradient;
  State inflow_state = State(1.0, 0.0, 0.0, 2.5);  ///< supersonic_inflow only
  double exit_pressure = 1.0;                      ///< fixed_pressure_outflow only

  static BoundaryCondition inflow(const State& U) { return {BoundaryKind::supersonic_inflow, U, 1.0}; }
  static BoundaryCondition pressure_outlet(double p) {
    return {BoundaryKind::fixed_pressure_outflow, State(1.0, 0.0, 0.0, 2.5), p};
  }
  static BoundaryCondition of(BoundaryKind kind) { return {kind, State(1.0, 0.0, 0.0, 2.5), 1.0}; }

  bool operator==(const BoundaryCondition&) const = default;
};

enum class Side { left, right, bottom, top };

struct BoundaryConditionSet {
  BoundaryCondition left;
  BoundaryCondition right;
  BoundaryCondition bottom;
  BoundaryCondition top;

  const BoundaryCondition& operator[](Side side) const;
  bool operator==(const BoundaryConditionSet&) const = default;
};

/// Throws when periodic is set on only one side of a pair, the exit pressure
/// is not positive or an inflow state is not physical.
void validate(const BoundaryConditionSet& bc, const GasModel& gas);

/// Supersonic inflow of the upstream state on the left, fixed exit pressure
/// equal to the downstream pressure on the right, periodic top and bottom.
BoundaryConditionSet normal_shock_boundaries(double mach, const GasModel& gas);

/// Number of ghost layers per side.
inline constexpr int kGhostLayers = 2;

/// Link between one ghost cell and the interior cell it is computed from:
/// ghost = g(U[source]) with d ghost / d U[source] = jacobian. source is -1
/// when the ghost does not depend on the interior (supersonic inflow).
struct GhostLink {
  int source = -1;
  Matrix4 jacobian = Matrix4::Zero();
};

/// Two ghost layers on each side. Layer 1 touches the boundary.
class GhostField {
 public:
  GhostField() = default;
  GhostField(int ni, int nj);

  /// `along` runs over j for the left/right sides and over i for bottom/top.
  State& at(Side side, int layer, int along);
  const State& at(Side side, int layer, int along) const;

 private:
  int ni_ = 0;
  int nj_ = 0;
  std::array<std::vector<State, Eigen::aligned_allocator<State>>, 4> layers_;
};

/// Interior cell that ghost (side, layer, along) is derived from.
int ghost_source_cell(const BoundaryConditionSet& bc, Side side, int layer, int along, int ni, int nj);

/// Ghost value computed from its source interior state.
State ghost_state(const BoundaryCondition& condition, const State& source, const Face& boundary_face,
                  const GasModel& gas);

GhostField fill_ghosts(const FlowField& field, const GridMetrics& metrics, const BoundaryConditionSet& bc);

/// Linearisation of one ghost with respect to its source cell.
GhostLink ghost_link(const FlowField& field, const GridMetrics& metrics, const BoundaryConditionSet& bc,
                     Side side, int layer, int along);

/// The boundary face adjacent to a ghost column or row.
const Face& boundary_face(const GridMetrics& metrics, Side side, int along);

}  // namespace shockstab
