#include "shockstab/stability.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "shockstab/error.hpp"

namespace shockstab {

namespace {

bool has_sonic_jump(const State& left, const State& right, double nx, double ny, const GasModel& gas) {
  const double jump = (right - left).norm();
  if (!(jump > 1e-10 * std::max(left.norm(), right.norm()))) return false;
  const double sl = std::sqrt(left[0]);
  const double sr = std::sqrt(right[0]);
  const double unl = (left[1] * nx + left[2] * ny) / left[0];
  const double unr = (right[1] * nx + right[2] * ny) / right[0];
  const double utl = (-left[1] * ny + left[2] * nx) / left[0];
  const double utr = (-right[1] * ny + right[2] * nx) / right[0];
  const double hl = (left[3] + pressure(left, gas)) / left[0];
  const double hr = (right[3] + pressure(right, gas)) / right[0];
  const double un = (sl * unl + sr * unr) / (sl + sr);
  const double ut = (sl * utl + sr * utr) / (sl + sr);
  const double h = (sl * hl + sr * hr) / (sl + sr);
  const double a2 = (gas.gamma - 1.0) * (h - 0.5 * (un * un + ut * ut));
  if (!(a2 > 0.0)) return false;
  const double a = std::sqrt(a2);
  const double tol = 1e-6 * (std::abs(un) + a);
  return std::abs(un - a) <= tol || std::abs(un + a) <= tol;
}

}  // namespace

FluxJacobianPair flux_jacobians(const State& left, const State& right, RiemannSolver solver, double nx,
                                double ny, const GasModel& gas, const SolverOptions& options) {
  if (solver == RiemannSolver::roe && !options.roe_entropy_fix && has_sonic_jump(left, right, nx, ny, gas)) {
    throw Error(Module::stability,
                "roe flux is not differentiable here: an acoustic Roe wave speed vanishes across a jump "
                "(shock on a cell face; use 0 < epsilon < 1)");
  }
  // Central differences at steps delta and delta/2 combined to cancel the
  // first-order error left where the base sits on a switch of the flux
  // (e.g. zero normal velocity selecting the HLLC star state).
  auto column = [&](const State& base, int k, auto&& flux) {
    auto central = [&](double step) {
      State plus = base, minus = base;
      plus[k] += step;
      minus[k] -= step;
      return Flux((flux(plus) - flux(minus)) / (2.0 * step));
    };
    return Flux(2.0 * central(0.5 * kJacobianStep) - central(kJacobianStep));
  };
  FluxJacobianPair jac;
  for (int k = 0; k < 4; ++k) {
    jac.left.col(k) = column(left, k, [&](const State& U) { return riemann_flux(solver, U, right, nx, ny, gas, options); });
    jac.right.col(k) = column(right, k, [&](const State& U) { return riemann_flux(solver, left, U, nx, ny, gas, options); });
  }
  if (!jac.left.allFinite() || !jac.right.allFinite()) {
    throw Error(Module::stability, "non-finite " + std::string(to_string(solver)) + " flux Jacobian");
  }
  return jac;
}

namespace {

Eigen::Vector4d reconstruction_variables(const State& U, const Discretization& disc, const GasModel& gas) {
  if (disc.scheme.variables == ReconstructionVariables::conservative) return U;
  return {U[0], U[1] / U[0], U[2] / U[0], pressure(U, gas)};
}

int uniform_components(const State& a, const State& b, const State& c, const Discretization& disc,
                       const GasModel& gas) {
  const Eigen::Vector4d wa = reconstruction_variables(a, disc, gas);
  const Eigen::Vector4d wb = reconstruction_variables(b, disc, gas);
  const Eigen::Vector4d wc = reconstruction_variables(c, disc, gas);
  int count = 0;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(wb[k] - wa[k]) < kSlopeGuard && std::abs(wc[k] - wb[k]) < kSlopeGuard) ++count;
  }
  return count;
}

// Base-value coefficients (upwind, centre) of one reconstructed scalar with the
// limiter held fixed; the downwind coefficient is zero.
std::array<double, 2> frozen_scalar(double upwind, double centre, double downwind, const ReconstructionScheme& scheme) {
  switch (scheme.kind) {
    case ReconstructionKind::first_order:
      break;
    case ReconstructionKind::muscl: {
      const double back = centre - upwind;
      if (std::abs(back) < kSlopeGuard) break;
      const double psi = limiter_value(scheme.limiter, (downwind - centre) / back, scheme.round);
      return {-0.5 * psi, 1.0 + 0.5 * psi};
    }
    case ReconstructionKind::round: {
      const double span = downwind - upwind;
      if (std::abs(span) < kSlopeGuard) break;
      const double u_hat = (centre - upwind) / span;
      if (!(u_hat > 0.0) || u_hat > 1.0) break;
      const double ratio = round_normalized(u_hat, scheme.round) / u_hat;
      return {1.0 - ratio, ratio};
    }
  }
  return {0.0, 1.0};
}

StencilCoefficients frozen_coefficients(const FaceStencil& stencil, bool boundary_order, const Discretization& disc,
                                        const GasModel& gas) {
  if (disc.scheme.variables != ReconstructionVariables::conservative) {
    throw Error(Module::stability, "frozen-limiter coefficients require conservative reconstruction");
  }
  StencilCoefficients out;
  const InterfaceStates base = face_states(stencil, boundary_order, disc, gas);
  const bool first = boundary_order || disc.scheme.kind == ReconstructionKind::first_order ||
                     base.left != reconstruct_left(stencil.cells[0], stencil.cells[1], stencil.cells[2],
                                                   disc.scheme, gas);
  if (first) {
    out.left[1] = Matrix4::Identity();
    out.right[1] = Matrix4::Identity();
    return out;
  }
  const auto& c = stencil.cells;
  for (int k = 0; k < 4; ++k) {
    const auto l = frozen_scalar(c[0][k], c[1][k], c[2][k], disc.scheme);
    out.left[0](k, k) = l[0];
    out.left[1](k, k) = l[1];
    const auto r = frozen_scalar(c[3][k], c[2][k], c[1][k], disc.scheme);
    out.right[2](k, k) = r[0];
    out.right[1](k, k) = r[1];
  }
  return out;
}

}  // namespace

StencilCoefficients reconstruction_coefficients(const FaceStencil& stencil, bool boundary_order,
                                                const Discretization& disc, const GasModel& gas,
                                                bool frozen_limiter) {
  const bool higher = !boundary_order && disc.scheme.kind != ReconstructionKind::first_order;
  if (frozen_limiter && higher) {
    StencilCoefficients out = frozen_coefficients(stencil, boundary_order, disc, gas);
    const auto& c = stencil.cells;
    out.uniform_components =
        uniform_components(c[0], c[1], c[2], disc, gas) + uniform_components(c[3], c[2], c[1], disc, gas);
    return out;
  }

  StencilCoefficients out;
  if (!higher) {
    out.left[1] = Matrix4::Identity();
    out.right[1] = Matrix4::Identity();
    return out;
  }
  const auto& c = stencil.cells;
  out.uniform_components =
      uniform_components(c[0], c[1], c[2], disc, gas) + uniform_components(c[3], c[2], c[1], disc, gas);

  const InterfaceStates base = face_states(stencil, boundary_order, disc, gas);
  auto finite = [](const InterfaceStates& s) { return s.left.allFinite() && s.right.allFinite(); };
  for (int cell = 0; cell < 4; ++cell) {
    for (int k = 0; k < 4; ++k) {
      FaceStencil plus = stencil, minus = stencil;
      plus.cells[static_cast<std::size_t>(cell)][k] += kJacobianStep;
      minus.cells[static_cast<std::size_t>(cell)][k] -= kJacobianStep;
      const InterfaceStates sp = face_states(plus, boundary_order, disc, gas);
      const InterfaceStates sm = face_states(minus, boundary_order, disc, gas);
      const bool plus_ok = finite(sp) && sp.physical == base.physical;
      const bool minus_ok = finite(sm) && sm.physical == base.physical;
      State dl, dr;
      if (plus_ok && minus_ok) {
        dl = (sp.left - sm.left) / (2.0 * kJacobianStep);
        dr = (sp.right - sm.right) / (2.0 * kJacobianStep);
      } else if (plus_ok) {
        dl = (sp.left - base.left) / kJacobianStep;
        dr = (sp.right - base.right) / kJacobianStep;
        ++out.one_sided_columns;
      } else if (minus_ok) {
        dl = (base.left - sm.left) / kJacobianStep;
        dr = (base.right - sm.right) / kJacobianStep;
        ++out.one_sided_columns;
      } else {
        throw Error(Module::stability, "reconstruction has no finite one-sided derivative with respect to cell " +
                                           std::to_string(cell) + " component " + std::to_string(k));
      }
      if (cell <= 2) out.left[static_cast<std::size_t>(cell)].col(k) = dl;
      if (cell >= 1) out.right[static_cast<std::size_t>(cell - 1)].col(k) = dr;
    }
  }
  return out;
}

double StabilityMatrix::frobenius_norm() const { return matrix.norm(); }

StabilityMatrix assemble(const FlowField& base, const GridMetrics& metrics, const Discretization& disc,
                         const AssemblyOptions& options) {
  if (metrics.ni() != base.ni() || metrics.nj() != base.nj()) {
    throw Error(Module::stability, "grid and base flow dimensions differ");
  }
  base.check_physical();
  const int ni = base.ni();
  const int nj = base.nj();
  const GasModel& gas = base.gas();
  const GhostField ghosts = fill_ghosts(base, metrics, disc.bc);
  const ExtendedField ext(base, ghosts);

  StabilityMatrix out;
  out.ni = ni;
  out.nj = nj;
  out.diagnostics.base_residual_inf = residual_norm_inf(residual(base, ghosts, metrics, disc));
  out.diagnostics.base_unsteady = out.diagnostics.base_residual_inf > options.steady_tolerance;

  const auto n = static_cast<Eigen::Index>(4) * base.cell_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(base.cell_count()) * 2 * 9 * 16);

  auto add_block = [&](int row_cell, int col_cell, const Matrix4& block) {
    for (int c = 0; c < 4; ++c) {
      for (int r = 0; r < 4; ++r) triplets.emplace_back(4 * row_cell + r, 4 * col_cell + c, block(r, c));
    }
  };

  for_each_face(metrics, [&](const FaceRef& f, const Face& geom) {
    ++out.diagnostics.face_count;
    FaceStencil stencil;
    for (int k = 0; k < 4; ++k) {
      const auto& c = f.stencil[static_cast<std::size_t>(k)];
      stencil.cells[static_cast<std::size_t>(k)] = ext.at(c[0], c[1]);
    }
    stencil.nx = geom.nx;
    stencil.ny = geom.ny;
    stencil.length = geom.length;
    const bool boundary_order = face_uses_boundary_order(f, metrics, disc);

    std::array<Matrix4, 4> dflux;
    try {
      const StencilCoefficients alpha =
          reconstruction_coefficients(stencil, boundary_order, disc, gas, options.frozen_limiter);
      if (alpha.one_sided_columns > 0) out.diagnostics.one_sided_faces.push_back(f.label());
      if (alpha.uniform_components > 0) ++out.diagnostics.uniform_stencil_faces;
      const InterfaceStates lr = face_states(stencil, boundary_order, disc, gas);
      const FluxJacobianPair jac =
          flux_jacobians(lr.left, lr.right, disc.solver, geom.nx, geom.ny, gas, disc.solver_options);
      dflux[0] = jac.left * alpha.left[0];
      dflux[1] = jac.left * alpha.left[1] + jac.right * alpha.right[0];
      dflux[2] = jac.left * alpha.left[2] + jac.right * alpha.right[1];
      dflux[3] = jac.right * alpha.right[2];
    } catch (const Error& e) {
      throw Error(Module::stability, f.label() + ", solver " + std::string(to_string(disc.solver)) + ": " +
                                         e.detail());
    }

    const double scale_left = f.left_cell >= 0 ? geom.length / metrics.volume(f.left_cell % ni, f.left_cell / ni) : 0.0;
    const double scale_right =
        f.right_cell >= 0 ? geom.length / metrics.volume(f.right_cell % ni, f.right_cell / ni) : 0.0;

    for (int k = 0; k < 4; ++k) {
      const auto& c = f.stencil[static_cast<std::size_t>(k)];
      int column = -1;
      Matrix4 block = dflux[static_cast<std::size_t>(k)];
      if (ext.is_interior(c[0], c[1])) {
        column = c[0] + c[1] * ni;
      } else {
        const GhostCoord g = ghost_coord(c[0], c[1], ni, nj);
        const GhostLink link = ghost_link(base, metrics, disc.bc, g.side, g.layer, g.along);
        if (link.source < 0) continue;
        column = link.source;
        block = block * link.jacobian;
      }
      if (f.left_cell >= 0) add_block(f.left_cell, column, -scale_left * block);
      if (f.right_cell >= 0) add_block(f.right_cell, column, scale_right * block);
    }
  });

  out.matrix.resize(n, n);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  // Coefficients that vanish exactly (first order, supersonic faces) are not stored.
  out.matrix.prune(0.0);
  out.matrix.makeCompressed();
  return out;
}

SpectrumResult eigensolve(const StabilityMatrix& S, const EigenOptions& options) {
  const Eigen::Index n = S.dimension();
  bool dense = options.path == EigenPath::dense || (options.path == EigenPath::automatic && n <= options.dense_cap);
  if (options.path == EigenPath::dense && n > options.dense_cap) {
    throw Error(Module::stability, "matrix dimension " + std::to_string(n) + " exceeds the dense cap " +
                                       std::to_string(options.dense_cap));
  }
  SpectrumResult out;
  if (dense) {
    out.values = dense_eigenvalues(S.dense());
    out.full = true;
    return out;
  }
  ArnoldiOptions ao = options.arnoldi;
  ao.seed = options.seed;
  const ArnoldiResult ar = arnoldi_rightmost(S.matrix, ao);
  if (!ar.converged) {
    throw Error(Module::stability, "Arnoldi did not converge after " + std::to_string(ar.restarts) + " restarts");
  }
  out.values = ar.values;
  out.full = false;
  return out;
}

EigenReport max_real_eigenpair(const StabilityMatrix& S, const FlowField& base, Spectrum spectrum,
                               const EigenOptions& options) {
  if (base.ni() != S.ni || base.nj() != S.nj) throw Error(Module::stability, "base flow does not match matrix");
  EigenReport report;
  report.max_index = max_real_index(spectrum);
  report.lambda_max = spectrum[report.max_index];
  report.spectrum = std::move(spectrum);

  const EigenPair pair =
      inverse_iteration(S.matrix, report.lambda_max, options.inverse_iteration_limit, 1e-10, options.seed);
  report.eigenvector = pair.vector;
  report.eigen_residual = pair.residual;
  report.inverse_iterations = pair.iterations;

  const int ni = S.ni;
  const int nj = S.nj;
  report.mode.rho.resize(ni, nj);
  report.mode.u.resize(ni, nj);
  report.mode.v.resize(ni, nj);
  report.mode.p.resize(ni, nj);
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const int c = base.index(i, j);
      const Eigen::Vector4cd dU = report.eigenvector.segment<4>(4 * c);
      const Eigen::Vector4cd dw = perturbation_to_primitive<Complex>(dU, base[c], base.gas());
      report.mode.rho(i, j) = dw[0];
      report.mode.u(i, j) = dw[1];
      report.mode.v(i, j) = dw[2];
      report.mode.p(i, j) = dw[3];
    }
  }
  return report;
}

EigenReport analyze(const StabilityMatrix& S, const FlowField& base, const EigenOptions& options) {
  SpectrumResult spec = eigensolve(S, options);
  EigenReport report = max_real_eigenpair(S, base, std::move(spec.values), options);
  report.full_spectrum = spec.full;
  return report;
}

bool is_unstable(const EigenReport& report, const StabilityMatrix& S) {
  return report.max_real() > kNeutralTolerance * S.frobenius_norm();
}

Eigen::MatrixXd mode_amplitude(const EigenReport& report, int ni, int nj) {
  Eigen::MatrixXd amp(ni, nj);
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) amp(i, j) = report.eigenvector.segment<4>(4 * (i + j * ni)).norm();
  }
  return amp;
}

void write_matrix_triplets(const StabilityMatrix& S, const std::filesystem::path& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw Error(Module::stability, "cannot open " + path.string() + " for writing");
  for (Eigen::Index r = 0; r < S.matrix.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(S.matrix, r); it; ++it) {
      std::fprintf(out, "%lld %lld %.17g\n", static_cast<long long>(it.row()), static_cast<long long>(it.col()),
                   it.value());
    }
  }
  if (std::fclose(out) != 0) throw Error(Module::stability, "failed writing " + path.string());
}

}  // namespace shockstab
