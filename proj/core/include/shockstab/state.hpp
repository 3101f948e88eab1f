#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <functional>
#include <vector>

#include "shockstab/mesh.hpp"

namespace shockstab {

/// Conservative state (rho, rho*u, rho*v, E), per unit volume.
using State = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

/// Calorically perfect gas.
struct GasModel {
  double gamma = 1.4;

  bool operator==(const GasModel&) const = default;
};

void validate(const GasModel& gas);

struct Primitive {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;

  bool operator==(const Primitive&) const = default;
};

inline double pressure(const State& U, const GasModel& gas) {
  return (gas.gamma - 1.0) * (U[3] - 0.5 * (U[1] * U[1] + U[2] * U[2]) / U[0]);
}

/// rho > 0 and p > 0, all components finite.
bool is_physical(const State& U, const GasModel& gas);
bool is_physical(const Primitive& w);

/// Throws Error(Module::state) for non-physical input.
State prim_to_cons(const Primitive& w, const GasModel& gas);
Primitive cons_to_prim(const State& U, const GasModel& gas);
double sound_speed(const Primitive& w, const GasModel& gas);

/// Cell-centred conservative field over ni x nj interior cells, i-fastest.
class FlowField {
 public:
  FlowField(int ni, int nj, GasModel gas, State fill = State(1.0, 0.0, 0.0, 2.5));

  int ni() const noexcept { return ni_; }
  int nj() const noexcept { return nj_; }
  int cell_count() const noexcept { return ni_ * nj_; }
  int index(int i, int j) const noexcept { return i + j * ni_; }
  const GasModel& gas() const noexcept { return gas_; }

  State& at(int i, int j) { return cells_[static_cast<std::size_t>(index(i, j))]; }
  const State& at(int i, int j) const { return cells_[static_cast<std::size_t>(index(i, j))]; }
  State& operator[](int c) { return cells_[static_cast<std::size_t>(c)]; }
  const State& operator[](int c) const { return cells_[static_cast<std::size_t>(c)]; }

  /// Flattened view: 4 * cell_count doubles, cell-major (4 components per cell).
  Eigen::Map<Eigen::VectorXd> flat();
  Eigen::Map<const Eigen::VectorXd> flat() const;

  /// Throws if any cell violates rho > 0, p > 0.
  void check_physical() const;

 private:
  int ni_;
  int nj_;
  GasModel gas_;
  std::vector<State, Eigen::aligned_allocator<State>> cells_;
};

struct ShockStates {
  Primitive upstream;
  Primitive downstream;
};

/// Upstream is normalised to rho = 1, u = 1, v = 0, p = 1/(gamma M0^2), so its
/// Mach number is exactly M0; downstream follows from the normal-shock
/// relations. M0 == 1 returns identical states.
ShockStates normal_shock_states(double mach, const GasModel& gas);

/// Produces the conservative state of the cell that contains the captured
/// shock, given the upstream and downstream conservative states and epsilon.
using ShockCellModel = std::function<State(const State& upstream, const State& downstream, double epsilon)>;

/// U_M = epsilon * U_up + (1 - epsilon) * U_down.
State conservative_blend(const State& upstream, const State& downstream, double epsilon);

/// Normal-shock base flow: columns i < shock_col hold the upstream state,
/// i > shock_col the downstream state, column shock_col the intermediate state.
FlowField init_normal_shock_rh(int ni, int nj, double mach, double epsilon, int shock_col,
                               const GasModel& gas,
                               const ShockCellModel& shock_cell = conservative_blend);

/// Reads prefix + "_rho.dat", "_u.dat", "_v.dat", "_p.dat"; each holds ni*nj
/// cell-centred values, i-fastest.
FlowField read_flow_files(const std::filesystem::path& prefix, int ni, int nj, const GasModel& gas);
void write_flow_files(const FlowField& field, const std::filesystem::path& prefix);

/// Path of one flow file for a given prefix and variable suffix ("rho", ...).
std::filesystem::path flow_file_path(const std::filesystem::path& prefix, const char* variable);

/// Linearised map from a conservative perturbation to (drho, du, dv, dp) about
/// a physical base state.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> perturbation_to_primitive(const Eigen::Matrix<Scalar, 4, 1>& dU,
                                                      const State& base, const GasModel& gas) {
  const double rho = base[0];
  const double u = base[1] / rho;
  const double v = base[2] / rho;
  Eigen::Matrix<Scalar, 4, 1> dw;
  dw[0] = dU[0];
  dw[1] = (dU[1] - u * dU[0]) / rho;
  dw[2] = (dU[2] - v * dU[0]) / rho;
  dw[3] = (gas.gamma - 1.0) * (dU[3] - 0.5 * (u * u + v * v) * dU[0] - rho * (u * dw[1] + v * dw[2]));
  return dw;
}

}  // namespace shockstab
