#include "shockstab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseLU>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "shockstab/error.hpp"

namespace shockstab {

Spectrum dense_eigenvalues(Eigen::MatrixXd A) {
  if (A.rows() != A.cols()) throw Error(Module::stability, "eigenvalue problem needs a square matrix");
  const auto n = static_cast<lapack_int>(A.rows());
  if (n == 0) return {};
  if (!A.allFinite()) throw Error(Module::stability, "matrix has non-finite entries");
  std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
  double dummy = 0.0;
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n, wr.data(), wi.data(), &dummy, 1, &dummy, 1);
  if (info > 0) {
    throw Error(Module::stability, "QR iteration failed to converge; eigenvalues from index " +
                                       std::to_string(info) + " on are not available");
  }
  if (info < 0) throw Error(Module::stability, "dgeev argument " + std::to_string(-info) + " is invalid");
  Spectrum out(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {wr[k], wi[k]};
  return out;
}

std::size_t max_real_index(const Spectrum& spectrum) {
  if (spectrum.empty()) throw Error(Module::stability, "empty spectrum");
  std::size_t best = 0;
  for (std::size_t k = 1; k < spectrum.size(); ++k) {
    const Complex& a = spectrum[k];
    const Complex& b = spectrum[best];
    if (a.real() > b.real() || (a.real() == b.real() && std::abs(a.imag()) > std::abs(b.imag()))) best = k;
  }
  return best;
}

void normalize_eigenvector(Eigen::VectorXcd& v) {
  if (v.size() == 0) return;
  const double vmax = v.cwiseAbs().maxCoeff();
  if (!(vmax > 0.0)) return;
  Eigen::Index pivot = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) >= (1.0 - 1e-9) * vmax) {
      pivot = k;
      break;
    }
  }
  v /= v[pivot];
  v[pivot] = 1.0;
}

namespace {

using ComplexSparse = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

Eigen::VectorXcd random_start(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double re = dist(rng);
    const double im = dist(rng);
    v[k] = {re, im};
  }
  return v;
}

Eigen::VectorXcd multiply(const SparseMatrix& A, const Eigen::VectorXcd& x) {
  Eigen::VectorXd re = A * x.real();
  Eigen::VectorXd im = A * x.imag();
  Eigen::VectorXcd y(x.size());
  y.real() = re;
  y.imag() = im;
  return y;
}

double frobenius(const SparseMatrix& A) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) s += it.value() * it.value();
  }
  return std::sqrt(s);
}

}  // namespace

EigenPair inverse_iteration(const SparseMatrix& A, Complex lambda, int max_iterations, double tol,
                            std::uint64_t seed) {
  const Eigen::Index n = A.rows();
  if (n != A.cols() || n == 0) throw Error(Module::stability, "inverse iteration needs a nonempty square matrix");
  const Complex sigma = lambda + Complex(1e-8, 0.0);

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(A.nonZeros() + n));
  for (Eigen::Index r = 0; r < A.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) triplets.emplace_back(it.row(), it.col(), it.value());
  }
  for (Eigen::Index k = 0; k < n; ++k) triplets.emplace_back(k, k, -sigma);
  ComplexSparse shifted(n, n);
  shifted.setFromTriplets(triplets.begin(), triplets.end());
  shifted.makeCompressed();

  Eigen::SparseLU<ComplexSparse, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(shifted);
  lu.factorize(shifted);
  if (lu.info() != Eigen::Success) {
    throw Error(Module::stability, "inverse iteration: shifted matrix factorization failed (" + lu.lastErrorMessage() +
                                       ")");
  }

  const double bound = tol * frobenius(A);
  EigenPair pair;
  pair.value = lambda;
  Eigen::VectorXcd x = random_start(n, seed);
  x.normalize();
  double res = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXcd y = lu.solve(x);
    const double norm = y.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
      throw Error(Module::stability, "inverse iteration broke down at iteration " + std::to_string(it));
    }
    x = y / norm;
    res = (multiply(A, x) - lambda * x).norm();
    pair.iterations = it;
    if (res <= bound) break;
  }
  if (!(res <= bound)) {
    throw Error(Module::stability, "inverse iteration stagnated after " + std::to_string(max_iterations) +
                                       " iterations; residual " + std::to_string(res) + " above " +
                                       std::to_string(bound));
  }
  normalize_eigenvector(x);
  pair.vector = x;
  pair.residual = (multiply(A, x) - lambda * x).norm();
  return pair;
}

namespace {

// Applies the Krylov operator: A, or (A - shift I)^-1 for shift-and-invert.
class KrylovOperator {
 public:
  KrylovOperator(const SparseMatrix& A, std::optional<double> shift) : A_(A), shift_(shift) {
    if (!shift_) return;
    Eigen::SparseMatrix<double, Eigen::ColMajor> m = A;
    Eigen::SparseMatrix<double, Eigen::ColMajor> id(A.rows(), A.cols());
    id.setIdentity();
    m -= *shift_ * id;
    m.makeCompressed();
    lu_.analyzePattern(m);
    lu_.factorize(m);
    if (lu_.info() != Eigen::Success) {
      throw Error(Module::stability, "Arnoldi: shift-and-invert factorization failed");
    }
  }

  Eigen::VectorXcd operator()(const Eigen::VectorXcd& x) const {
    if (!shift_) return multiply(A_, x);
    Eigen::VectorXd re = lu_.solve(Eigen::VectorXd(x.real()));
    Eigen::VectorXd im = lu_.solve(Eigen::VectorXd(x.imag()));
    Eigen::VectorXcd y(x.size());
    y.real() = re;
    y.imag() = im;
    return y;
  }

  Complex to_eigenvalue(Complex theta) const { return shift_ ? *shift_ + 1.0 / theta : theta; }

 private:
  const SparseMatrix& A_;
  std::optional<double> shift_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor>, Eigen::COLAMDOrdering<int>> lu_;
};

// Gram-Schmidt of w against the first k columns of V with one
// reorthogonalization pass; the coefficients accumulate into h.
void orthogonalize(const Eigen::MatrixXcd& V, Eigen::Index k, Eigen::VectorXcd& w, Eigen::VectorXcd& h) {
  h = Eigen::VectorXcd::Zero(k);
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXcd c = V.leftCols(k).adjoint() * w;
    w -= V.leftCols(k) * c;
    h += c;
  }
}

}  // namespace

ArnoldiResult arnoldi_rightmost(const SparseMatrix& A, const ArnoldiOptions& options) {
  const Eigen::Index n = A.rows();
  if (n != A.cols() || n == 0) throw Error(Module::stability, "Arnoldi needs a nonempty square matrix");
  const int nev = options.nev;
  if (nev < 1) throw Error(Module::stability, "Arnoldi: nev must be positive");
  const Eigen::Index m = std::min<Eigen::Index>(std::max(options.ncv, 2 * nev + 1), n);
  if (m >= n || m <= nev) {
    // Tiny problem: the whole space fits, fall back to the dense solver.
    Spectrum all = dense_eigenvalues(Eigen::MatrixXd(A));
    std::stable_sort(all.begin(), all.end(), [](Complex a, Complex b) { return a.real() > b.real(); });
    ArnoldiResult r;
    r.values.assign(all.begin(), all.begin() + std::min<std::size_t>(all.size(), static_cast<std::size_t>(nev)));
    r.residuals.assign(r.values.size(), 0.0);
    r.converged = true;
    return r;
  }

  const KrylovOperator op(A, options.shift);
  const double scale = options.shift ? 1.0 : std::max(frobenius(A), 1e-300);

  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, m + 1);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  V.col(0) = random_start(n, options.seed).normalized();
  Eigen::Index k = 0;  // number of locked-in basis vectors after a restart

  // Order Ritz values by the real part of the eigenvalue they estimate.
  auto by_real = [&](const Eigen::VectorXcd& theta) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(theta.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return op.to_eigenvalue(theta[a]).real() > op.to_eigenvalue(theta[b]).real();
    });
    return order;
  };

  ArnoldiResult result;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    for (Eigen::Index j = k; j < m; ++j) {
      Eigen::VectorXcd w = op(V.col(j));
      Eigen::VectorXcd h;
      orthogonalize(V, j + 1, w, h);
      H.col(j).head(j + 1) = h;
      const double beta = w.norm();
      H(j + 1, j) = beta;
      if (beta <= 1e-14 * h.norm()) {
        // Invariant subspace; continue with a fresh direction orthogonal to V.
        Eigen::VectorXcd r = random_start(n, options.seed + static_cast<std::uint64_t>(j + 1));
        Eigen::VectorXcd dummy;
        orthogonalize(V, j + 1, r, dummy);
        V.col(j + 1) = r.normalized();
        H(j + 1, j) = 0.0;
      } else {
        V.col(j + 1) = w / beta;
      }
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(H.topRows(m));
    if (ces.info() != Eigen::Success) throw Error(Module::stability, "Arnoldi: projected eigenproblem failed");
    const Eigen::VectorXcd theta = ces.eigenvalues();
    const Eigen::MatrixXcd Y = ces.eigenvectors();
    const auto order = by_real(theta);

    result.values.clear();
    result.residuals.clear();
    bool all_converged = true;
    for (int q = 0; q < nev; ++q) {
      const Eigen::Index idx = order[static_cast<std::size_t>(q)];
      const Eigen::VectorXcd y = Y.col(idx).normalized();
      const double ritz_res = std::abs((H.row(m) * y)(0));
      const Complex lam = op.to_eigenvalue(theta[idx]);
      // Residual in terms of the original eigenvalue for shift-and-invert.
      const double rel = options.shift ? ritz_res / std::max(std::norm(theta[idx]), 1e-300) /
                                             std::max(std::abs(lam), 1.0)
                                       : ritz_res / scale;
      result.values.push_back(lam);
      result.residuals.push_back(rel);
      if (!(rel <= options.tol)) all_converged = false;
    }
    result.restarts = restart;
    if (all_converged) {
      result.converged = true;
      return result;
    }
    if (restart == options.max_restarts) break;

    // Thick restart: keep the Schur-like basis of the wanted Ritz vectors.
    k = std::min<Eigen::Index>(nev + (m - nev) / 2, m - 1);
    Eigen::MatrixXcd Yk(m, k);
    for (Eigen::Index q = 0; q < k; ++q) Yk.col(q) = Y.col(order[static_cast<std::size_t>(q)]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Yk);
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, k);
    const Eigen::MatrixXcd Vk = V.leftCols(m) * Q;
    const Eigen::MatrixXcd Hk = Q.adjoint() * H.topRows(m) * Q;
    const Eigen::RowVectorXcd b = H.row(m) * Q;
    const Eigen::VectorXcd vnext = V.col(m);
    V.setZero();
    H.setZero();
    V.leftCols(k) = Vk;
    V.col(k) = vnext;
    H.topLeftCorner(k, k) = Hk;
    H.row(k).head(k) = b;
  }
  result.converged = false;
  return result;
}

}  // namespace shockstab
