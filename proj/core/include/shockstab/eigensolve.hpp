#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace shockstab {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// All eigenvalues of a dense real matrix (LAPACK dgeev: balancing, Hessenberg
/// reduction, implicitly shifted QR). Throws on QR non-convergence.
Spectrum dense_eigenvalues(Eigen::MatrixXd A);

/// Index of the eigenvalue with the largest real part. Ties go to the larger
/// |Im|, then to the lower index.
std::size_t max_real_index(const Spectrum& spectrum);

struct EigenPair {
  Complex value;
  Eigen::VectorXcd vector;  ///< unit max-abs component, first maximal component real positive
  double residual = 0.0;    ///< ||A v - lambda v||_2 with the normalised v
  int iterations = 0;
};

/// Eigenvector for a known eigenvalue by inverse iteration with shift
/// lambda + 1e-8 from a seeded random start. Throws if the residual does not
/// fall below tol * ||A||_F within max_iterations.
EigenPair inverse_iteration(const SparseMatrix& A, Complex lambda, int max_iterations = 50,
                            double tol = 1e-10, std::uint64_t seed = 0x5eed5eedULL);

/// Scales v so its largest-magnitude component (first one within a relative
/// 1e-9 of the maximum) equals 1.
void normalize_eigenvector(Eigen::VectorXcd& v);

struct ArnoldiOptions {
  int nev = 10;             ///< wanted eigenvalues (largest real part)
  int ncv = 60;             ///< Krylov subspace size
  int max_restarts = 3000;
  double tol = 1e-12;       ///< relative Ritz residual
  /// Real shift for shift-and-invert; when set the Krylov space is built
  /// with (A - shift I)^-1.
  std::optional<double> shift;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct ArnoldiResult {
  Spectrum values;  ///< sorted by decreasing real part
  std::vector<double> residuals;
  int restarts = 0;
  bool converged = false;
};

/// Restarted Arnoldi (Krylov-Schur style thick restart) for the eigenvalues
/// of largest real part of a sparse matrix.
ArnoldiResult arnoldi_rightmost(const SparseMatrix& A, const ArnoldiOptions& options = {});

}  // namespace shockstab
