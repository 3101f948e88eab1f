#include "shockstab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "shockstab/error.hpp"

namespace shockstab {

std::vector<double> march_local_time_steps(FlowField& field, const GridMetrics& metrics, const Discretization& disc,
                                           int steps, double cfl, bool i_faces_only) {
  if (steps < 1) throw Error(Module::harness, "step count must be at least 1, got " + std::to_string(steps));
  if (!(cfl > 0.0 && cfl <= 1.0)) throw Error(Module::harness, "cfl must lie in (0, 1], got " + std::to_string(cfl));
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(steps) + 1);
  const int n = field.cell_count();
  for (int step = 1; step <= steps; ++step) {
    Eigen::VectorXd r;
    Eigen::VectorXd radius;
    try {
      r = residual(field, metrics, disc);
      radius = spectral_radius_sum(field, metrics, i_faces_only);
    } catch (const Error& e) {
      throw Error(Module::harness, "march blew up at step " + std::to_string(step) + ": " + e.what());
    }
    history.push_back(residual_norm_inf(r));
    auto flat = field.flat();
    for (int c = 0; c < n; ++c) {
      const double dt = cfl * 2.0 * metrics.volume(c % field.ni(), c / field.ni()) / radius[c];
      flat.segment<4>(4 * c) += dt * r.segment<4>(4 * c);
    }
    for (int c = 0; c < n; ++c) {
      if (!is_physical(field[c], field.gas())) {
        throw Error(Module::harness,
                    "march blew up at step " + std::to_string(step) + ": cell " + std::to_string(c) + " is not physical");
      }
    }
  }
  return history;
}

OneDField solve_1d_steady(int ni, double mach, double epsilon, int steps, const ReconstructionScheme& scheme,
                          RiemannSolver solver, double cfl, const OneDSolveOptions& options) {
  if (steps < 1) throw Error(Module::harness, "1D solve needs at least one step, got " + std::to_string(steps));
  if (ni < 3) throw Error(Module::harness, "1D solve needs at least 3 cells");
  const int column = options.shock_column < 0 ? ni / 2 : options.shock_column;
  FlowField field = init_normal_shock_rh(ni, 1, mach, epsilon, column, options.gas);
  const GridMetrics metrics = compute_metrics(cartesian_grid(ni, 1));
  Discretization disc;
  disc.scheme = scheme;
  disc.solver = solver;
  disc.solver_options = options.solver_options;
  disc.bc = normal_shock_boundaries(mach, options.gas);

  OneDField out;
  out.gas = options.gas;
  out.residual_history = march_local_time_steps(field, metrics, disc, steps, cfl, true);
  out.steps = steps;
  out.final_residual = residual_norm_inf(residual(field, metrics, disc));
  out.cells.reserve(static_cast<std::size_t>(ni));
  for (int i = 0; i < ni; ++i) {
    const State& U = field.at(i, 0);
    out.cells.emplace_back(U[0], U[1], U[3]);
  }
  return out;
}

FlowField project_1d_to_2d(const OneDField& profile, int ni, int nj) {
  if (profile.size() != ni) {
    throw Error(Module::harness, "1D profile has " + std::to_string(profile.size()) + " cells, grid has " +
                                     std::to_string(ni));
  }
  if (nj < 1) throw Error(Module::harness, "grid needs at least one row");
  FlowField field(ni, nj, profile.gas);
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const State1D& w = profile.cells[static_cast<std::size_t>(i)];
      field.at(i, j) = State(w[0], w[1], 0.0, w[2]);
    }
  }
  field.check_physical();
  return field;
}

double NormSeries::norm(std::size_t k) const { return std::exp(log_norm[k]); }

double spectral_radius_bound(const SparseMatrix& S) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(S.rows());
  Eigen::VectorXd col = Eigen::VectorXd::Zero(S.cols());
  for (Eigen::Index r = 0; r < S.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(S, r); it; ++it) {
      row[it.row()] += std::abs(it.value());
      col[it.col()] += std::abs(it.value());
    }
  }
  if (S.rows() == 0) return 0.0;
  return std::min(row.maxCoeff(), col.maxCoeff());
}

NormSeries evolve_linear(const SparseMatrix& S, const Eigen::VectorXd& initial, double dt, int nsteps) {
  if (S.rows() != S.cols() || S.rows() != initial.size()) {
    throw Error(Module::harness, "perturbation size does not match the matrix");
  }
  if (!(dt > 0.0)) throw Error(Module::harness, "time step must be positive");
  if (nsteps < 0) throw Error(Module::harness, "step count must not be negative");
  if (!(initial.norm() > 0.0)) throw Error(Module::harness, "initial perturbation must be nonzero and finite");
  const double bound = spectral_radius_bound(S);
  if (dt * bound > 2.7) {
    throw Error(Module::harness, "time step " + std::to_string(dt) + " exceeds the RK4 bound 2.7/" +
                                     std::to_string(bound));
  }
  NormSeries series;
  series.t.reserve(static_cast<std::size_t>(nsteps) + 1);
  series.log_norm.reserve(static_cast<std::size_t>(nsteps) + 1);
  Eigen::VectorXd x = initial;
  double log_scale = 0.0;  // x holds the perturbation divided by exp(log_scale)
  auto record = [&](int step) {
    series.t.push_back(step * dt);
    series.log_norm.push_back(std::log(x.norm()) + log_scale);
  };
  record(0);
  for (int step = 1; step <= nsteps; ++step) {
    const Eigen::VectorXd k1 = S * x;
    const Eigen::VectorXd k2 = S * (x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = S * (x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = S * (x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double nrm = x.norm();
    if (!std::isfinite(nrm)) {
      series.truncated = true;
      series.note = "overflow at step " + std::to_string(step);
      break;
    }
    if (nrm > 1e100 || (nrm < 1e-100 && nrm > 0.0)) {
      x /= nrm;
      log_scale += std::log(nrm);
    }
    record(step);
  }
  return series;
}

Eigen::VectorXd random_perturbation(const FlowField& base, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd d(4 * base.cell_count());
  for (int c = 0; c < base.cell_count(); ++c) {
    const double scale = amplitude * base[c].norm();
    for (int k = 0; k < 4; ++k) d[4 * c + k] = scale * dist(rng);
  }
  return d;
}

namespace {

void rk4_step(FlowField& field, const GridMetrics& metrics, const Discretization& disc, double dt) {
  const Eigen::VectorXd u0 = field.flat();
  const Eigen::VectorXd k1 = residual(field, metrics, disc);
  field.flat() = u0 + 0.5 * dt * k1;
  const Eigen::VectorXd k2 = residual(field, metrics, disc);
  field.flat() = u0 + 0.5 * dt * k2;
  const Eigen::VectorXd k3 = residual(field, metrics, disc);
  field.flat() = u0 + dt * k3;
  const Eigen::VectorXd k4 = residual(field, metrics, disc);
  field.flat() = u0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

NormSeries evolve_nonlinear(const FlowField& base, const GridMetrics& metrics, const Discretization& disc,
                            int nsteps, const NonlinearOptions& options) {
  if (nsteps < 0) throw Error(Module::harness, "step count must not be negative");
  if (!(options.cfl > 0.0)) throw Error(Module::harness, "cfl must be positive");
  const Eigen::VectorXd radius = spectral_radius_sum(base, metrics);
  double dt = std::numeric_limits<double>::infinity();
  for (int c = 0; c < base.cell_count(); ++c) {
    dt = std::min(dt, options.cfl * 2.0 * metrics.volume(c % base.ni(), c / base.ni()) / radius[c]);
  }

  FlowField reference = base;
  FlowField perturbed = base;
  perturbed.flat() += random_perturbation(base, options.amplitude, options.seed);
  const double base_norm = base.flat().norm();

  NormSeries series;
  auto record = [&](int step) {
    const double d = (perturbed.flat() - reference.flat()).norm();
    series.t.push_back(step * dt);
    series.log_norm.push_back(d > 0.0 ? std::log(d) : -std::numeric_limits<double>::infinity());
    return d;
  };
  record(0);
  for (int step = 1; step <= nsteps; ++step) {
    try {
      rk4_step(perturbed, metrics, disc, dt);
      rk4_step(reference, metrics, disc, dt);
    } catch (const Error& e) {
      series.truncated = true;
      series.note = "blow-up at step " + std::to_string(step) + ": " + e.what();
      break;
    }
    const double d = record(step);
    if (!std::isfinite(d)) {
      series.t.pop_back();
      series.log_norm.pop_back();
      series.truncated = true;
      series.note = "overflow at step " + std::to_string(step);
      break;
    }
    if (d > options.saturation * base_norm) {
      series.truncated = true;
      series.note = "saturated at step " + std::to_string(step);
      break;
    }
  }
  return series;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const NormSeries& s, std::size_t first, std::size_t last) {
  const double n = static_cast<double>(last - first);
  double tm = 0.0, ym = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    tm += s.t[k];
    ym += s.log_norm[k];
  }
  tm /= n;
  ym /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    stt += (s.t[k] - tm) * (s.t[k] - tm);
    sty += (s.t[k] - tm) * (s.log_norm[k] - ym);
  }
  LineFit fit;
  fit.slope = sty / stt;
  double ss = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    const double e = s.log_norm[k] - (ym + fit.slope * (s.t[k] - tm));
    ss += e * e;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

GrowthFit fit_growth_rate(const NormSeries& series, const FitWindowPolicy& policy) {
  const std::size_t n = series.size();
  if (series.log_norm.size() != n) throw Error(Module::harness, "series time and norm lengths differ");
  for (std::size_t k = 1; k < n; ++k) {
    if (!(series.t[k] > series.t[k - 1])) throw Error(Module::harness, "series times are not increasing");
  }
  std::size_t usable = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(series.log_norm[k])) {
      usable = k;
      break;
    }
  }
  const auto min_samples = static_cast<std::size_t>(std::max(policy.min_samples, 3));
  const auto first = static_cast<std::size_t>(std::ceil(policy.discard_fraction * static_cast<double>(usable)));
  if (usable < first + min_samples) {
    throw Error(Module::harness, "growth fit needs at least " + std::to_string(min_samples) +
                                     " samples after discarding the start, have " +
                                     std::to_string(usable > first ? usable - first : 0));
  }

  std::size_t last = usable;
  double worst = 0.0;
  while (last >= first + min_samples) {
    const LineFit whole = least_squares(series, first, last);
    const std::size_t tail_first = first + 3 * (last - first) / 4;
    if (last - tail_first < 3) break;
    const LineFit tail = least_squares(series, tail_first, last);
    const double deviation = std::abs(tail.slope - whole.slope);
    worst = deviation;
    if (deviation <= policy.linearity_tolerance * std::max(std::abs(whole.slope), 1e-12)) {
      GrowthFit fit;
      fit.sigma = whole.slope;
      fit.residual = whole.rms;
      fit.first = first;
      fit.last = last;
      fit.t0 = series.t[first];
      fit.t1 = series.t[last - 1];
      return fit;
    }
    const std::size_t shrink = std::max<std::size_t>(1, (last - first) / 20);
    last -= shrink;
  }
  throw Error(Module::harness, "no log-linear window found in " + std::to_string(n) +
                                   " samples; last tail-slope deviation " + std::to_string(worst));
}

double dominance_gap(const Spectrum& spectrum) {
  if (spectrum.empty()) return std::numeric_limits<double>::infinity();
  const Complex top = spectrum[max_real_index(spectrum)];
  // Repeated copies of lambda_max (symmetry-degenerate modes) grow at the same
  // rate and do not count as competitors.
  const double tol = 1e-8 * std::max(1.0, std::abs(top));
  double next = -std::numeric_limits<double>::infinity();
  for (const Complex& z : spectrum) {
    if (std::abs(z - top) <= tol || std::abs(z - std::conj(top)) <= tol) continue;
    next = std::max(next, z.real());
  }
  if (next == -std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::infinity();
  return top.real() - next;
}

ValidationRow validate_point(const ValidationCase& c) {
  ValidationRow row;
  row.input = c;
  try {
    const GasModel gas;
    const OneDField profile = solve_1d_steady(c.ni, c.mach, c.epsilon, c.steps_1d, c.scheme, c.solver, c.cfl_1d);
    const FlowField base = project_1d_to_2d(profile, c.ni, c.nj);
    const GridMetrics metrics = compute_metrics(cartesian_grid(c.ni, c.nj));
    Discretization disc;
    disc.scheme = c.scheme;
    disc.solver = c.solver;
    disc.bc = normal_shock_boundaries(c.mach, gas);
    const StabilityMatrix S = assemble(base, metrics, disc);
    row.base_residual = S.diagnostics.base_residual_inf;
    const SpectrumResult spec = eigensolve(S);
    row.max_real = spec.values[max_real_index(spec.values)].real();
    row.gap = dominance_gap(spec.values);
    row.applicable = row.max_real > 0.01 && row.gap >= 1e-3;
    if (!row.applicable) return row;

    // Long enough for the dominant mode to take over, short of needless cost.
    const double horizon = std::min(std::max(40.0 / row.gap, 50.0 / row.max_real), 1e5);
    const double dt = 0.9 * max_linear_time_step(S.matrix);
    const int steps = static_cast<int>(std::ceil(horizon / dt));
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd start(S.dimension());
    for (Eigen::Index k = 0; k < start.size(); ++k) start[k] = dist(rng);
    row.sigma_linear = fit_growth_rate(evolve_linear(S.matrix, start, dt, steps)).sigma;
    row.rel_diff_linear = std::abs(row.sigma_linear - row.max_real) / row.max_real;

    NonlinearOptions nl;
    nl.seed = c.seed;
    const NormSeries series = evolve_nonlinear(base, metrics, disc, 200000, nl);
    row.sigma_nonlinear = fit_growth_rate(series).sigma;
    row.rel_diff_nonlinear = std::abs(row.sigma_nonlinear - row.max_real) / row.max_real;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

void write_validation_table(const std::vector<ValidationRow>& rows, const std::filesystem::path& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw Error(Module::harness, "cannot open " + path.string() + " for writing");
  std::fprintf(out,
               "M0,solver,reconstruction,maxReLambda,gap,sigma_linear,sigma_nonlinear,rel_diff,rel_diff_nonlinear,"
               "note\n");
  for (const ValidationRow& r : rows) {
    std::string recon(to_string(r.input.scheme.kind));
    if (r.input.scheme.kind == ReconstructionKind::muscl) recon += "/" + std::string(to_string(r.input.scheme.limiter));
    std::string note = !r.error.empty() ? r.error : (r.applicable ? "" : "not dominant or not unstable");
    if (r.base_residual > 1e-6) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%sbase residual %.2e", note.empty() ? "" : "; ", r.base_residual);
      note += buf;
    }
    std::replace(note.begin(), note.end(), ',', ';');
    std::fprintf(out, "%.17g,%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", r.input.mach,
                 std::string(to_string(r.input.solver)).c_str(), recon.c_str(), r.max_real, r.gap, r.sigma_linear,
                 r.sigma_nonlinear, r.rel_diff_linear, r.rel_diff_nonlinear, note.c_str());
  }
  if (std::fclose(out) != 0) throw Error(Module::harness, "failed writing " + path.string());
}

void write_series(const NormSeries& series, const std::filesystem::path& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw Error(Module::harness, "cannot open " + path.string() + " for writing");
  for (std::size_t k = 0; k < series.size(); ++k) std::fprintf(out, "%.17g %.17g\n", series.t[k], series.norm(k));
  if (std::fclose(out) != 0) throw Error(Module::harness, "failed writing " + path.string());
}

Grid curved_wall_grid(int ni_cells, int nj_cells, double wall_radius, double outer_radius, double half_angle) {
  if (ni_cells < 1 || nj_cells < 1) throw Error(Module::harness, "curved grid needs at least one cell each way");
  if (!(outer_radius > wall_radius && wall_radius > 0.0)) {
    throw Error(Module::harness, "outer radius must exceed a positive wall radius");
  }
  if (!(half_angle > 0.0 && half_angle < std::numbers::pi / 2)) {
    throw Error(Module::harness, "half angle must lie in (0, pi/2)");
  }
  std::vector<Point> nodes;
  nodes.reserve(static_cast<std::size_t>((ni_cells + 1) * (nj_cells + 1)));
  for (int j = 0; j <= nj_cells; ++j) {
    const double theta = -half_angle + 2.0 * half_angle * j / nj_cells;
    for (int i = 0; i <= ni_cells; ++i) {
      const double r = outer_radius - (outer_radius - wall_radius) * i / ni_cells;
      nodes.push_back({-r * std::cos(theta), r * std::sin(theta)});
    }
  }
  return Grid(ni_cells + 1, nj_cells + 1, std::move(nodes));
}

BoundaryConditionSet external_flow_boundaries(const Primitive& free_stream, const GasModel& gas) {
  return {BoundaryCondition::inflow(prim_to_cons(free_stream, gas)), BoundaryCondition::of(BoundaryKind::slip_wall),
          BoundaryCondition::of(BoundaryKind::zero_gradient), BoundaryCondition::of(BoundaryKind::zero_gradient)};
}

ExternalFlowCase external_flow_case(int ni_cells, int nj_cells, double mach, int steps, double cfl) {
  const GasModel gas;
  const Primitive free_stream{1.4, mach, 0.0, 1.0};
  Grid grid = curved_wall_grid(ni_cells, nj_cells);
  const GridMetrics metrics = compute_metrics(grid);
  FlowField field(ni_cells, nj_cells, gas, prim_to_cons(free_stream, gas));
  Discretization disc;
  disc.solver = RiemannSolver::hll;
  disc.bc = external_flow_boundaries(free_stream, gas);
  march_local_time_steps(field, metrics, disc, steps, cfl);
  const double final_residual = residual_norm_inf(residual(field, metrics, disc));
  return {std::move(grid), std::move(field), disc.bc, final_residual};
}

}  // namespace shockstab
