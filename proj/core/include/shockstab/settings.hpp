#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shockstab/boundary.hpp"
#include "shockstab/reconstruction.hpp"
#include "shockstab/riemann.hpp"
#include "shockstab/stability.hpp"

namespace shockstab {

enum class TestCase { normal_shock, external_flow };
enum class InitMode { rankine_hugoniot, oned_projection, flow_files };

std::string_view to_string(TestCase value);
std::string_view to_string(InitMode value);
std::string_view to_string(EigenPath value);

/// Analysis settings read from a key=value file. Defaults reproduce the
/// second-order HLLC / van Albada normal-shock case at M0 = 20, epsilon = 0.1
/// on 11 x 11 cells.
struct Settings {
  TestCase test_case = TestCase::normal_shock;
  ReconstructionKind reconstruction = ReconstructionKind::muscl;
  Limiter limiter = Limiter::van_albada;
  ReconstructionVariables variables = ReconstructionVariables::conservative;
  RiemannSolver solver = RiemannSolver::hllc;
  double mach = 20.0;
  double epsilon = 0.1;
  InitMode init_mode = InitMode::oned_projection;
  int steps_1d = 20000;
  double cfl_1d = 0.5;
  int ni = 11;
  int nj = 11;
  /// Domain extent of the Cartesian grid; 0 means one length unit per cell.
  double domain_x = 0.0;
  double domain_y = 0.0;
  std::string grid_file;
  std::string flow_file_prefix;
  double gamma = 1.4;
  int shock_column = -1;  ///< -1: middle column
  std::optional<BoundaryKind> bc_left;
  std::optional<BoundaryKind> bc_right;
  std::optional<BoundaryKind> bc_bottom;
  std::optional<BoundaryKind> bc_top;
  std::optional<double> p_exit;
  /// Free stream of the external-flow case; rho and p default to 1.4 and 1,
  /// the velocity to mach along x.
  double inflow_rho = 1.4;
  std::optional<double> inflow_u;
  double inflow_v = 0.0;
  double inflow_p = 1.0;
  bool entropy_fix = false;
  bool frozen_limiter = false;
  bool first_order_at_boundary = false;
  std::string output_prefix = "shockstab_out";
  bool validate = false;
  bool dump_matrix = false;
  bool sweep = false;
  std::optional<std::vector<double>> sweep_mach;
  std::optional<std::vector<RiemannSolver>> sweep_solver;
  std::optional<std::vector<ReconstructionKind>> sweep_reconstruction;
  EigenPath eigen_path = EigenPath::automatic;
  long dense_cap = 12000;
  std::uint64_t seed = 0x5eed5eedULL;

  bool operator==(const Settings&) const = default;
};

/// Parses settings text. Lines are "key = value"; '#' starts a comment; blank
/// lines are ignored. Throws Error(Module::cli) on unknown keys, bad values,
/// duplicate keys or keys missing for the chosen test case.
Settings parse_settings_text(std::string_view text);
Settings parse_settings(const std::filesystem::path& path);

/// Checks ranges and per-test-case required keys.
void validate(const Settings& settings);

/// Canonical key=value listing of every setting; parses back to an equal
/// Settings value.
std::string echo_settings(const Settings& settings);

}  // namespace shockstab
