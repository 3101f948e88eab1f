#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shockstab/eigensolve.hpp"
#include "shockstab/residual.hpp"
#include "shockstab/stability.hpp"

namespace shockstab {

/// Conservative 1D state (rho, rho*u, E).
using State1D = Eigen::Vector3d;

struct OneDField {
  std::vector<State1D> cells;
  GasModel gas;
  int steps = 0;                 ///< iterations performed
  double final_residual = 0.0;   ///< ||dU/dt||_inf after the last step
  std::vector<double> residual_history;  ///< ||dU/dt||_inf before each step

  int size() const { return static_cast<int>(cells.size()); }
};

/// Local-time-stepping forward Euler march of `field` towards a steady state:
/// U += dt_cell * R(U) with dt_cell = cfl * 2|Omega| / sum_faces (|q_n| + a) L.
/// Returns ||R||_inf before each step. Throws Error(Module::harness) with the
/// step index on blow-up.
std::vector<double> march_local_time_steps(FlowField& field, const GridMetrics& metrics, const Discretization& disc,
                                           int steps, double cfl, bool i_faces_only = false);

struct OneDSolveOptions {
  GasModel gas;
  SolverOptions solver_options;
  int shock_column = -1;  ///< -1: middle cell
};

/// Steady 1D normal-shock profile from the Rankine-Hugoniot initial state,
/// after exactly `steps` local-time-stepping iterations with supersonic inflow
/// on the left and the downstream pressure imposed on the right.
OneDField solve_1d_steady(int ni, double mach, double epsilon, int steps, const ReconstructionScheme& scheme,
                          RiemannSolver solver, double cfl, const OneDSolveOptions& options = {});

/// Copies the 1D profile into every row of an ni x nj field with v = 0.
FlowField project_1d_to_2d(const OneDField& profile, int ni, int nj);

/// Time series of a perturbation norm. The norm is held as its logarithm so
/// that long unstable runs do not overflow.
struct NormSeries {
  std::vector<double> t;
  std::vector<double> log_norm;
  bool truncated = false;  ///< stopped early by blow-up or saturation
  std::string note;

  std::size_t size() const { return t.size(); }
  double norm(std::size_t k) const;
};

/// Upper bound of the spectral radius: min(||S||_1, ||S||_inf).
double spectral_radius_bound(const SparseMatrix& S);

/// Largest step the linear marcher accepts for S.
inline double max_linear_time_step(const SparseMatrix& S) { return 2.7 / spectral_radius_bound(S); }

/// Integrates d(dU)/dt = S dU with classical RK4 and records ||dU||_2 at
/// t = 0, dt, ..., nsteps*dt.
NormSeries evolve_linear(const SparseMatrix& S, const Eigen::VectorXd& initial, double dt, int nsteps);

struct NonlinearOptions {
  double amplitude = 1e-8;  ///< relative to the local state norm
  double cfl = 0.8;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Stop once ||U - U_base|| exceeds this fraction of ||U_base||.
  double saturation = 1e-3;
};

/// Seeded perturbation: uniform in [-1, 1] per component times
/// amplitude * ||U_cell||.
Eigen::VectorXd random_perturbation(const FlowField& base, double amplitude, std::uint64_t seed);

/// Marches base + perturbation and the unperturbed base side by side with RK4
/// and a fixed global CFL step, recording ||U_perturbed - U_unperturbed||_2.
NormSeries evolve_nonlinear(const FlowField& base, const GridMetrics& metrics, const Discretization& disc,
                            int nsteps, const NonlinearOptions& options = {});

struct FitWindowPolicy {
  double discard_fraction = 0.2;
  double linearity_tolerance = 0.01;
  int min_samples = 10;
};

struct GrowthFit {
  double sigma = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  double residual = 0.0;  ///< rms deviation of ln||dU|| from the fitted line
  std::size_t first = 0;
  std::size_t last = 0;   ///< one past the final sample used
};

/// Least-squares slope of ln||dU|| against t over an automatically chosen
/// window. Throws Error(Module::harness) when no log-linear window exists.
GrowthFit fit_growth_rate(const NormSeries& series, const FitWindowPolicy& policy = {});

/// Gap in real part between lambda_max and the next eigenvalue that is neither
/// a copy of lambda_max nor of its conjugate (within 1e-8 relative). Infinity
/// for spectra without such a value.
double dominance_gap(const Spectrum& spectrum);

struct ValidationCase {
  double mach = 20.0;
  double epsilon = 0.1;
  int ni = 11;
  int nj = 11;
  ReconstructionScheme scheme;
  RiemannSolver solver = RiemannSolver::hllc;
  int steps_1d = 20000;
  double cfl_1d = 0.5;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct ValidationRow {
  ValidationCase input;
  double max_real = 0.0;
  double gap = 0.0;
  double sigma_linear = 0.0;
  double sigma_nonlinear = 0.0;
  double rel_diff_linear = 0.0;
  double rel_diff_nonlinear = 0.0;
  double base_residual = 0.0;  ///< ||R(base)||_inf; large values mean the 1D solve did not settle
  bool applicable = false;  ///< max Re > 0.01 and gap >= 1e-3
  std::string error;        ///< nonempty if the point failed
};

/// One point of the growth-rate validation on the 1D-projected base flow.
ValidationRow validate_point(const ValidationCase& c);

/// Delimited table: M0, solver, reconstruction, maxReLambda, gap, sigma_linear,
/// sigma_nonlinear, rel_diff, rel_diff_nonlinear, note.
void write_validation_table(const std::vector<ValidationRow>& rows, const std::filesystem::path& path);

/// Two-column "t norm" file.
void write_series(const NormSeries& series, const std::filesystem::path& path);

/// Body-fitted grid in front of a circular wall of radius `wall_radius`
/// centred at the origin: i runs inward from r = outer_radius to the wall,
/// j runs over the polar angle in [-half_angle, half_angle].
Grid curved_wall_grid(int ni_cells, int nj_cells, double wall_radius = 1.0, double outer_radius = 3.0,
                      double half_angle = 1.2);

struct ExternalFlowCase {
  Grid grid;
  FlowField field;
  BoundaryConditionSet bc;
  double final_residual = 0.0;
};

/// Boundary set of the external-flow case: free-stream inflow on the outer
/// boundary, slip wall on the body, zero gradient on both angular sides.
BoundaryConditionSet external_flow_boundaries(const Primitive& free_stream, const GasModel& gas);

/// Best-effort steady flow in front of the curved wall: first-order HLL march
/// from the free stream (rho = 1.4, p = 1, u = mach).
ExternalFlowCase external_flow_case(int ni_cells, int nj_cells, double mach = 20.0, int steps = 4000,
                                    double cfl = 0.4);

}  // namespace shockstab
