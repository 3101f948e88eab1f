#include "shockstab/reconstruction.hpp"

#include <cmath>

namespace shockstab {

std::string_view to_string(ReconstructionKind kind) {
  switch (kind) {
    case ReconstructionKind::first_order: return "first_order";
    case ReconstructionKind::muscl: return "muscl";
    case ReconstructionKind::round: return "round";
  }
  return "unknown";
}

std::optional<ReconstructionKind> parse_reconstruction(std::string_view name) {
  for (auto k : {ReconstructionKind::first_order, ReconstructionKind::muscl, ReconstructionKind::round}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double reconstruct_scalar(double upwind, double centre, double downwind, const ReconstructionScheme& scheme) {
  switch (scheme.kind) {
    case ReconstructionKind::first_order:
      return centre;
    case ReconstructionKind::muscl: {
      const double back = centre - upwind;
      if (std::abs(back) < kSlopeGuard) return centre;
      const double r = (downwind - centre) / back;
      return centre + 0.5 * limiter_value(scheme.limiter, r, scheme.round) * back;
    }
    case ReconstructionKind::round: {
      const double span = downwind - upwind;
      if (std::abs(span) < kSlopeGuard) return centre;
      const double u_hat = (centre - upwind) / span;
      return upwind + round_normalized(u_hat, scheme.round) * span;
    }
  }
  return centre;
}

namespace {

Eigen::Vector4d to_primitive_vector(const State& U, const GasModel& gas) {
  const double rho = U[0];
  return {rho, U[1] / rho, U[2] / rho, pressure(U, gas)};
}

State from_primitive_vector(const Eigen::Vector4d& w, const GasModel& gas) {
  return {w[0], w[0] * w[1], w[0] * w[2], w[3] / (gas.gamma - 1.0) + 0.5 * w[0] * (w[1] * w[1] + w[2] * w[2])};
}

}  // namespace

State reconstruct_left(const State& upwind, const State& centre, const State& downwind,
                       const ReconstructionScheme& scheme, const GasModel& gas) {
  if (scheme.kind == ReconstructionKind::first_order) return centre;
  if (scheme.variables == ReconstructionVariables::primitive) {
    const Eigen::Vector4d a = to_primitive_vector(upwind, gas);
    const Eigen::Vector4d b = to_primitive_vector(centre, gas);
    const Eigen::Vector4d c = to_primitive_vector(downwind, gas);
    Eigen::Vector4d w;
    for (int k = 0; k < 4; ++k) w[k] = reconstruct_scalar(a[k], b[k], c[k], scheme);
    return from_primitive_vector(w, gas);
  }
  State face;
  for (int k = 0; k < 4; ++k) face[k] = reconstruct_scalar(upwind[k], centre[k], downwind[k], scheme);
  return face;
}

InterfaceStates reconstruct_face(const FaceStencil& stencil, const ReconstructionScheme& scheme,
                                 const GasModel& gas) {
  const auto& c = stencil.cells;
  InterfaceStates out;
  out.left = reconstruct_left(c[0], c[1], c[2], scheme, gas);
  out.right = reconstruct_left(c[3], c[2], c[1], scheme, gas);
  out.physical = is_physical(out.left, gas) && is_physical(out.right, gas);
  return out;
}

}  // namespace shockstab
