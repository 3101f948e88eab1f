#pragma once

#include <optional>
#include <string_view>

#include "shockstab/state.hpp"

namespace shockstab {

using Flux = Eigen::Vector4d;

enum class RiemannSolver { roe, hllc, hll, van_leer, ausm_plus, slau, hlle, hllem };

inline constexpr RiemannSolver kAllSolvers[] = {RiemannSolver::roe,      RiemannSolver::hllc,
                                                RiemannSolver::hll,      RiemannSolver::van_leer,
                                                RiemannSolver::ausm_plus, RiemannSolver::slau,
                                                RiemannSolver::hlle,     RiemannSolver::hllem};

std::string_view to_string(RiemannSolver solver);
std::optional<RiemannSolver> parse_solver(std::string_view name);

struct SolverOptions {
  /// Harten's entropy fix on the Roe solver. Off by default: it changes the
  /// stability of the scheme being analysed.
  bool roe_entropy_fix = false;
  double entropy_fix_fraction = 0.1;  ///< fix width as a fraction of the Roe-averaged sound speed

  bool operator==(const SolverOptions&) const = default;
};

/// Exact Euler flux through a face with unit normal (nx, ny).
Flux physical_flux(const State& U, double nx, double ny, const GasModel& gas);

/// Numerical flux through a face with unit normal (nx, ny), with U_L on the
/// side the normal points away from. Velocities are rotated into the face
/// frame, the one-dimensional solver is evaluated there and the momentum flux
/// is rotated back.
///
/// HLL and HLLC use Davis wave-speed estimates; HLLE and HLLEM use Einfeldt's
/// Roe-averaged estimates. Throws Error(Module::numerics) for non-finite or
/// non-physical input.
Flux riemann_flux(RiemannSolver solver, const State& UL, const State& UR, double nx, double ny,
                  const GasModel& gas, const SolverOptions& options = {});

}  // namespace shockstab
