#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shockstab/eigensolve.hpp"
#include "shockstab/residual.hpp"

namespace shockstab {

/// Finite-difference step used for every linearisation in this module.
inline constexpr double kJacobianStep = 1e-7;

/// dF/dU^L and dF/dU^R of a numerical flux at one face.
struct FluxJacobianPair {
  Matrix4 left = Matrix4::Zero();
  Matrix4 right = Matrix4::Zero();
};

/// Central differences of riemann_flux in each state component. Throws
/// Error(Module::stability) for a non-finite column, and for the Roe solver
/// (without entropy fix) when an acoustic Roe wave speed vanishes across a
/// jump, i.e. a captured shock sits exactly on the face.
FluxJacobianPair flux_jacobians(const State& left, const State& right, RiemannSolver solver, double nx,
                                double ny, const GasModel& gas, const SolverOptions& options = {});

/// Derivatives of the two interface states of a face with respect to the four
/// stencil cells. left[k] = dU^L/dU(cell k), k = 0..2 (cells i-1, i, i+1);
/// right[k] = dU^R/dU(cell k+1) (cells i, i+1, i+2).
struct StencilCoefficients {
  std::array<Matrix4, 3> left{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
  std::array<Matrix4, 3> right{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
  /// Columns that had to use a one-sided difference.
  int one_sided_columns = 0;
  /// Reconstructed components whose three-cell stencil is uniform at the base
  /// state. The reconstruction is not differentiable there; the coefficients
  /// are its first-order limit.
  int uniform_components = 0;
};

/// Linearisation of face_states() about the stencil. With `frozen_limiter` the
/// limiter (MUSCL) or the normalised response ratio (ROUND) is held at its base
/// value instead of being differentiated.
StencilCoefficients reconstruction_coefficients(const FaceStencil& stencil, bool boundary_order,
                                                const Discretization& disc, const GasModel& gas,
                                                bool frozen_limiter = false);

struct AssemblyOptions {
  bool frozen_limiter = false;
  /// Base-flow residual above which the diagnostics flag the base as unsteady.
  double steady_tolerance = 1e-6;
};

struct AssemblyDiagnostics {
  double base_residual_inf = 0.0;
  bool base_unsteady = false;
  /// Faces where at least one coefficient column used a one-sided difference.
  std::vector<std::string> one_sided_faces;
  /// Faces with at least one uniform-stencil component.
  int uniform_stencil_faces = 0;
  int face_count = 0;
};

/// Jacobian of the semi-discrete residual at a base flow, 4 rows per cell in
/// cell-major order.
struct StabilityMatrix {
  SparseMatrix matrix;
  int ni = 0;
  int nj = 0;
  AssemblyDiagnostics diagnostics;

  Eigen::Index dimension() const { return matrix.rows(); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
  double frobenius_norm() const;
};

StabilityMatrix assemble(const FlowField& base, const GridMetrics& metrics, const Discretization& disc,
                         const AssemblyOptions& options = {});

enum class EigenPath { automatic, dense, arnoldi };

struct EigenOptions {
  EigenPath path = EigenPath::automatic;
  /// Largest dimension handled by the dense solver; automatic switches to
  /// Arnoldi above it and dense refuses.
  Eigen::Index dense_cap = 12000;
  ArnoldiOptions arnoldi;
  int inverse_iteration_limit = 50;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Full spectrum (dense) or the leading eigenvalues by real part (Arnoldi).
struct SpectrumResult {
  Spectrum values;
  bool full = true;
};

SpectrumResult eigensolve(const StabilityMatrix& S, const EigenOptions& options = {});

/// Unstable-mode fields on the grid, ni x nj, indexed (i, j).
struct ModeFields {
  Eigen::MatrixXcd rho;
  Eigen::MatrixXcd u;
  Eigen::MatrixXcd v;
  Eigen::MatrixXcd p;
};

struct EigenReport {
  Spectrum spectrum;
  bool full_spectrum = true;
  std::size_t max_index = 0;
  Complex lambda_max;
  Eigen::VectorXcd eigenvector;
  double eigen_residual = 0.0;  ///< ||S v - lambda v||_2
  int inverse_iterations = 0;
  ModeFields mode;

  double max_real() const { return lambda_max.real(); }
};

/// Selects lambda_max, computes its eigenvector and maps it to primitive
/// perturbation fields about `base`.
EigenReport max_real_eigenpair(const StabilityMatrix& S, const FlowField& base, Spectrum spectrum,
                               const EigenOptions& options = {});

/// eigensolve followed by max_real_eigenpair.
EigenReport analyze(const StabilityMatrix& S, const FlowField& base, const EigenOptions& options = {});

/// Eigenvalues whose real part stays within this multiple of ||S||_F of zero
/// count as neutral; anything above is an instability.
inline constexpr double kNeutralTolerance = 1e-10;

bool is_unstable(const EigenReport& report, const StabilityMatrix& S);

/// Per-cell amplitude ||v_cell||_2 of the conservative eigenvector, ni x nj.
Eigen::MatrixXd mode_amplitude(const EigenReport& report, int ni, int nj);

/// Writes "row col value" triplets (0-based), one per stored entry, row-major.
void write_matrix_triplets(const StabilityMatrix& S, const std::filesystem::path& path);

}  // namespace shockstab
