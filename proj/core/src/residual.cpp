#include "shockstab/residual.hpp"

#include <cmath>

#include "shockstab/error.hpp"

namespace shockstab {

std::string FaceRef::label() const {
  return std::string(dir == Direction::i ? "i-face (" : "j-face (") + std::to_string(i) + ", " +
         std::to_string(j) + ")";
}

GhostCoord ghost_coord(int i, int j, int ni, int nj) {
  if (i < 0) return {Side::left, -i, j};
  if (i >= ni) return {Side::right, i - ni + 1, j};
  if (j < 0) return {Side::bottom, -j, i};
  return {Side::top, j - nj + 1, i};
}

const State& ExtendedField::at(int i, int j) const {
  if (is_interior(i, j)) return field_.at(i, j);
  const GhostCoord g = ghost_coord(i, j, field_.ni(), field_.nj());
  return ghosts_.at(g.side, g.layer, g.along);
}

bool face_uses_boundary_order(const FaceRef& face, const GridMetrics& metrics, const Discretization& disc) {
  if (!disc.first_order_at_boundary) return false;
  for (const auto& c : face.stencil) {
    if (c[0] < 0 || c[0] >= metrics.ni() || c[1] < 0 || c[1] >= metrics.nj()) return true;
  }
  return false;
}

InterfaceStates face_states(const FaceStencil& stencil, bool boundary_order, const Discretization& disc,
                            const GasModel& gas) {
  if (boundary_order || disc.scheme.kind == ReconstructionKind::first_order) {
    return {stencil.cells[1], stencil.cells[2], true};
  }
  InterfaceStates lr = reconstruct_face(stencil, disc.scheme, gas);
  if (!lr.physical) {
    if (!disc.fallback_first_order) {
      throw Error(Module::numerics, "reconstructed interface state is not physical");
    }
    return {stencil.cells[1], stencil.cells[2], false};
  }
  return lr;
}

Flux face_flux(const FaceStencil& stencil, bool boundary_order, const Discretization& disc, const GasModel& gas) {
  const InterfaceStates lr = face_states(stencil, boundary_order, disc, gas);
  return riemann_flux(disc.solver, lr.left, lr.right, stencil.nx, stencil.ny, gas, disc.solver_options);
}

Eigen::VectorXd residual(const FlowField& field, const GhostField& ghosts, const GridMetrics& metrics,
                         const Discretization& disc) {
  if (metrics.ni() != field.ni() || metrics.nj() != field.nj()) {
    throw Error(Module::residual, "grid and flow field dimensions differ");
  }
  const ExtendedField ext(field, ghosts);
  const GasModel& gas = field.gas();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(4 * field.cell_count());

  for_each_face(metrics, [&](const FaceRef& f, const Face& geom) {
    FaceStencil stencil;
    for (int k = 0; k < 4; ++k) {
      const auto& c = f.stencil[static_cast<std::size_t>(k)];
      stencil.cells[static_cast<std::size_t>(k)] = ext.at(c[0], c[1]);
    }
    stencil.nx = geom.nx;
    stencil.ny = geom.ny;
    stencil.length = geom.length;
    Flux flux;
    try {
      flux = face_flux(stencil, face_uses_boundary_order(f, metrics, disc), disc, gas);
    } catch (const Error& e) {
      throw Error(Module::residual, f.label() + ": " + e.what());
    }
    if (f.left_cell >= 0) {
      const int c = f.left_cell;
      r.segment<4>(4 * c) -= geom.length / metrics.volume(c % field.ni(), c / field.ni()) * flux;
    }
    if (f.right_cell >= 0) {
      const int c = f.right_cell;
      r.segment<4>(4 * c) += geom.length / metrics.volume(c % field.ni(), c / field.ni()) * flux;
    }
  });
  return r;
}

Eigen::VectorXd residual(const FlowField& field, const GridMetrics& metrics, const Discretization& disc) {
  return residual(field, fill_ghosts(field, metrics, disc.bc), metrics, disc);
}

double residual_norm_inf(const Eigen::VectorXd& r) { return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff(); }

Eigen::VectorXd spectral_radius_sum(const FlowField& field, const GridMetrics& metrics, bool i_only) {
  const int ni = field.ni();
  const int nj = field.nj();
  Eigen::VectorXd sum(field.cell_count());
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const Primitive w = cons_to_prim(field.at(i, j), field.gas());
      const double a = sound_speed(w, field.gas());
      auto term = [&](const Face& f) { return (std::abs(w.u * f.nx + w.v * f.ny) + a) * f.length; };
      double s = term(metrics.i_face(i, j)) + term(metrics.i_face(i + 1, j));
      if (!i_only) s += term(metrics.j_face(i, j)) + term(metrics.j_face(i, j + 1));
      sum[field.index(i, j)] = s;
    }
  }
  return sum;
}

}  // namespace shockstab
