#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "shockstab/limiter.hpp"
#include "shockstab/state.hpp"

namespace shockstab {

enum class ReconstructionKind { first_order, muscl, round };
enum class ReconstructionVariables { conservative, primitive };

std::string_view to_string(ReconstructionKind kind);
std::optional<ReconstructionKind> parse_reconstruction(std::string_view name);

struct ReconstructionScheme {
  ReconstructionKind kind = ReconstructionKind::first_order;
  Limiter limiter = Limiter::van_albada;  ///< used by MUSCL only
  RoundParams round;                      ///< used by ROUND and the deng limiter
  ReconstructionVariables variables = ReconstructionVariables::conservative;

  bool operator==(const ReconstructionScheme&) const = default;
};

/// Differences smaller than this revert a component to first order.
inline constexpr double kSlopeGuard = 1e-40;

/// Four states along the grid line normal to a face: cells i-1, i, i+1, i+2
/// with the face between i and i+1.
struct FaceStencil {
  std::array<State, 4> cells;
  double nx = 1.0;
  double ny = 0.0;
  double length = 1.0;
};

struct InterfaceStates {
  State left;
  State right;
  bool physical = true;
};

/// Left-biased face value from three scalars (upwind, centre, downwind).
double reconstruct_scalar(double upwind, double centre, double downwind, const ReconstructionScheme& scheme);

/// Left interface state of the face between `centre` and `downwind`. The right
/// state of a face is obtained from the mirrored stencil.
State reconstruct_left(const State& upwind, const State& centre, const State& downwind,
                       const ReconstructionScheme& scheme, const GasModel& gas);

/// U^L from cells (0,1,2) of the stencil, U^R from cells (3,2,1).
/// `physical` is false when either side has rho <= 0 or p <= 0.
InterfaceStates reconstruct_face(const FaceStencil& stencil, const ReconstructionScheme& scheme,
                                 const GasModel& gas);

}  // namespace shockstab
