#include "shockstab/boundary.hpp"

#include <string>

#include "shockstab/error.hpp"

namespace shockstab {

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::supersonic_inflow: return "supersonic_inflow";
    case BoundaryKind::fixed_pressure_outflow: return "fixed_pressure_outflow";
    case BoundaryKind::zero_gradient: return "zero_gradient";
    case BoundaryKind::slip_wall: return "slip_wall";
    case BoundaryKind::periodic: return "periodic";
  }
  return "unknown";
}

std::optional<BoundaryKind> parse_boundary_kind(std::string_view name) {
  for (auto k : {BoundaryKind::supersonic_inflow, BoundaryKind::fixed_pressure_outflow,
                 BoundaryKind::zero_gradient, BoundaryKind::slip_wall, BoundaryKind::periodic}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

const BoundaryCondition& BoundaryConditionSet::operator[](Side side) const {
  switch (side) {
    case Side::left: return left;
    case Side::right: return right;
    case Side::bottom: return bottom;
    case Side::top: return top;
  }
  return left;
}

void validate(const BoundaryConditionSet& bc, const GasModel& gas) {
  auto periodic = [](const BoundaryCondition& c) { return c.kind == BoundaryKind::periodic; };
  if (periodic(bc.left) != periodic(bc.right)) {
    throw Error(Module::residual, "periodic boundary must be set on both left and right sides");
  }
  if (periodic(bc.bottom) != periodic(bc.top)) {
    throw Error(Module::residual, "periodic boundary must be set on both bottom and top sides");
  }
  for (Side s : {Side::left, Side::right, Side::bottom, Side::top}) {
    const BoundaryCondition& c = bc[s];
    if (c.kind == BoundaryKind::fixed_pressure_outflow && !(c.exit_pressure > 0.0)) {
      throw Error(Module::residual, "exit pressure must be positive, got " + std::to_string(c.exit_pressure));
    }
    if (c.kind == BoundaryKind::supersonic_inflow && !is_physical(c.inflow_state, gas)) {
      throw Error(Module::residual, "inflow state is not physical");
    }
  }
}

BoundaryConditionSet normal_shock_boundaries(double mach, const GasModel& gas) {
  const ShockStates shock = normal_shock_states(mach, gas);
  return {BoundaryCondition::inflow(prim_to_cons(shock.upstream, gas)),
          BoundaryCondition::pressure_outlet(shock.downstream.p),
          BoundaryCondition::of(BoundaryKind::periodic), BoundaryCondition::of(BoundaryKind::periodic)};
}

GhostField::GhostField(int ni, int nj) : ni_(ni), nj_(nj) {
  layers_[static_cast<int>(Side::left)].resize(static_cast<std::size_t>(kGhostLayers * nj));
  layers_[static_cast<int>(Side::right)].resize(static_cast<std::size_t>(kGhostLayers * nj));
  layers_[static_cast<int>(Side::bottom)].resize(static_cast<std::size_t>(kGhostLayers * ni));
  layers_[static_cast<int>(Side::top)].resize(static_cast<std::size_t>(kGhostLayers * ni));
}

State& GhostField::at(Side side, int layer, int along) {
  const int n = (side == Side::left || side == Side::right) ? nj_ : ni_;
  return layers_[static_cast<int>(side)][static_cast<std::size_t>((layer - 1) * n + along)];
}

const State& GhostField::at(Side side, int layer, int along) const {
  const int n = (side == Side::left || side == Side::right) ? nj_ : ni_;
  return layers_[static_cast<int>(side)][static_cast<std::size_t>((layer - 1) * n + along)];
}

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }

int clamp_index(int k, int n) { return k < 0 ? 0 : (k >= n ? n - 1 : k); }

}  // namespace

int ghost_source_cell(const BoundaryConditionSet& bc, Side side, int layer, int along, int ni, int nj) {
  const BoundaryKind kind = bc[side].kind;
  // Offset of the source from the boundary, counted into the interior.
  int depth = 0;
  if (kind == BoundaryKind::slip_wall) depth = layer - 1;
  switch (side) {
    case Side::left: {
      const int i = kind == BoundaryKind::periodic ? wrap(-layer, ni) : clamp_index(depth, ni);
      return i + along * ni;
    }
    case Side::right: {
      const int i = kind == BoundaryKind::periodic ? wrap(ni - 1 + layer, ni) : clamp_index(ni - 1 - depth, ni);
      return i + along * ni;
    }
    case Side::bottom: {
      const int j = kind == BoundaryKind::periodic ? wrap(-layer, nj) : clamp_index(depth, nj);
      return along + j * ni;
    }
    case Side::top: {
      const int j = kind == BoundaryKind::periodic ? wrap(nj - 1 + layer, nj) : clamp_index(nj - 1 - depth, nj);
      return along + j * ni;
    }
  }
  return 0;
}

const Face& boundary_face(const GridMetrics& metrics, Side side, int along) {
  switch (side) {
    case Side::left: return metrics.i_face(0, along);
    case Side::right: return metrics.i_face(metrics.ni(), along);
    case Side::bottom: return metrics.j_face(along, 0);
    case Side::top: return metrics.j_face(along, metrics.nj());
  }
  return metrics.i_face(0, along);
}

State ghost_state(const BoundaryCondition& condition, const State& source, const Face& face, const GasModel& gas) {
  switch (condition.kind) {
    case BoundaryKind::supersonic_inflow:
      return condition.inflow_state;
    case BoundaryKind::zero_gradient:
    case BoundaryKind::periodic:
      return source;
    case BoundaryKind::fixed_pressure_outflow: {
      const double rho = source[0];
      const double ke = 0.5 * (source[1] * source[1] + source[2] * source[2]) / rho;
      return {source[0], source[1], source[2], condition.exit_pressure / (gas.gamma - 1.0) + ke};
    }
    case BoundaryKind::slip_wall: {
      const double mn = source[1] * face.nx + source[2] * face.ny;
      return {source[0], source[1] - 2.0 * mn * face.nx, source[2] - 2.0 * mn * face.ny, source[3]};
    }
  }
  return source;
}

GhostField fill_ghosts(const FlowField& field, const GridMetrics& metrics, const BoundaryConditionSet& bc) {
  validate(bc, field.gas());
  const int ni = field.ni();
  const int nj = field.nj();
  GhostField ghosts(ni, nj);
  for (Side side : {Side::left, Side::right, Side::bottom, Side::top}) {
    const int n = (side == Side::left || side == Side::right) ? nj : ni;
    for (int layer = 1; layer <= kGhostLayers; ++layer) {
      for (int along = 0; along < n; ++along) {
        const int src = ghost_source_cell(bc, side, layer, along, ni, nj);
        const State g = ghost_state(bc[side], field[src], boundary_face(metrics, side, along), field.gas());
        if (!is_physical(g, field.gas())) {
          throw Error(Module::residual, "non-physical ghost state on the " +
                                            std::string(side == Side::left    ? "left"
                                                        : side == Side::right ? "right"
                                                        : side == Side::bottom ? "bottom"
                                                                               : "top") +
                                            " boundary at position " + std::to_string(along));
        }
        ghosts.at(side, layer, along) = g;
      }
    }
  }
  return ghosts;
}

GhostLink ghost_link(const FlowField& field, const GridMetrics& metrics, const BoundaryConditionSet& bc,
                     Side side, int layer, int along) {
  const BoundaryCondition& condition = bc[side];
  GhostLink link;
  link.source = ghost_source_cell(bc, side, layer, along, field.ni(), field.nj());
  switch (condition.kind) {
    case BoundaryKind::supersonic_inflow:
      link.source = -1;
      return link;
    case BoundaryKind::zero_gradient:
    case BoundaryKind::periodic:
      link.jacobian = Matrix4::Identity();
      return link;
    case BoundaryKind::fixed_pressure_outflow:
    case BoundaryKind::slip_wall:
      break;
  }
  constexpr double delta = 1e-7;
  const Face& face = boundary_face(metrics, side, along);
  const State& base = field[link.source];
  for (int k = 0; k < 4; ++k) {
    State plus = base, minus = base;
    plus[k] += delta;
    minus[k] -= delta;
    link.jacobian.col(k) = (ghost_state(condition, plus, face, field.gas()) -
                            ghost_state(condition, minus, face, field.gas())) /
                           (2.0 * delta);
  }
  return link;
}

}  // namespace shockstab
