#include "shockstab/app.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "shockstab/error.hpp"

namespace shockstab {

namespace {

Grid grid_for(const Settings& s) {
  if (!s.grid_file.empty()) return read_grid(s.grid_file);
  const double lx = s.domain_x > 0.0 ? s.domain_x : s.ni;
  const double ly = s.domain_y > 0.0 ? s.domain_y : s.nj;
  return cartesian_grid(s.ni, s.nj, lx, ly);
}

ReconstructionScheme scheme_for(const Settings& s) {
  ReconstructionScheme scheme;
  scheme.kind = s.reconstruction;
  scheme.limiter = s.limiter;
  scheme.variables = s.variables;
  return scheme;
}

Primitive free_stream(const Settings& s) { return {s.inflow_rho, s.inflow_u.value_or(s.mach), s.inflow_v, s.inflow_p}; }

}  // namespace

BoundaryConditionSet boundaries_for(const Settings& s) {
  const GasModel gas{s.gamma};
  BoundaryConditionSet bc;
  State inflow;
  double exit_pressure = 1.0;
  if (s.test_case == TestCase::normal_shock) {
    bc = normal_shock_boundaries(s.mach, gas);
    inflow = bc.left.inflow_state;
    exit_pressure = bc.right.exit_pressure;
  } else {
    bc = external_flow_boundaries(free_stream(s), gas);
    inflow = bc.left.inflow_state;
    exit_pressure = s.inflow_p;
  }
  if (s.p_exit) exit_pressure = *s.p_exit;
  auto override_side = [&](BoundaryCondition& c, const std::optional<BoundaryKind>& kind) {
    if (kind) c.kind = *kind;
    c.inflow_state = inflow;
    c.exit_pressure = exit_pressure;
  };
  override_side(bc.left, s.bc_left);
  override_side(bc.right, s.bc_right);
  override_side(bc.bottom, s.bc_bottom);
  override_side(bc.top, s.bc_top);
  validate(bc, gas);
  return bc;
}

AnalysisCase prepare_case(const Settings& s) {
  validate(s);
  const GasModel gas{s.gamma};
  validate(gas);
  Grid grid = grid_for(s);
  GridMetrics metrics = compute_metrics(grid);
  const int ni = grid.ni_cells();
  const int nj = grid.nj_cells();

  Discretization disc;
  disc.scheme = scheme_for(s);
  disc.solver = s.solver;
  disc.solver_options.roe_entropy_fix = s.entropy_fix;
  disc.first_order_at_boundary = s.first_order_at_boundary;
  disc.bc = boundaries_for(s);

  const int column = s.shock_column < 0 ? ni / 2 : s.shock_column;
  FlowField base = [&]() -> FlowField {
    if (s.test_case == TestCase::external_flow || s.init_mode == InitMode::flow_files) {
      return read_flow_files(s.flow_file_prefix, ni, nj, gas);
    }
    if (s.init_mode == InitMode::oned_projection) {
      OneDSolveOptions opt;
      opt.gas = gas;
      opt.solver_options = disc.solver_options;
      opt.shock_column = column;
      const OneDField profile =
          solve_1d_steady(ni, s.mach, s.epsilon, s.steps_1d, disc.scheme, s.solver, s.cfl_1d, opt);
      return project_1d_to_2d(profile, ni, nj);
    }
    return init_normal_shock_rh(ni, nj, s.mach, s.epsilon, column, gas);
  }();
  return {std::move(grid), std::move(metrics), std::move(base), std::move(disc)};
}

AnalysisOutcome run_analysis(const Settings& s) {
  AnalysisCase input = prepare_case(s);
  AssemblyOptions ao;
  ao.frozen_limiter = s.frozen_limiter;
  StabilityMatrix S = assemble(input.base, input.metrics, input.disc, ao);
  EigenOptions eo;
  eo.path = s.eigen_path;
  eo.dense_cap = s.dense_cap;
  eo.seed = s.seed;
  EigenReport report = analyze(S, input.base, eo);
  const bool unstable = is_unstable(report, S);
  return {std::move(input), std::move(S), std::move(report), unstable};
}

namespace {

std::FILE* open_for_writing(const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(Module::cli, "cannot open " + path.string() + " for writing");
  return f;
}

void close_checked(std::FILE* f, const std::filesystem::path& path) {
  if (std::fclose(f) != 0) throw Error(Module::cli, "failed writing " + path.string());
}

void write_field(const Eigen::MatrixXd& values, const std::filesystem::path& path) {
  std::FILE* f = open_for_writing(path);
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) std::fprintf(f, "%.17g\n", values(i, j));
  }
  close_checked(f, path);
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::FILE* f = open_for_writing(path);
  std::fputs(text.c_str(), f);
  close_checked(f, path);
}

std::string summary_text(const AnalysisOutcome& o, const Settings& s) {
  const EigenReport& r = o.report;
  const AssemblyDiagnostics& d = o.matrix.diagnostics;
  char buf[256];
  std::string out;
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
    out += '\n';
  };
  line("test_case: %s", std::string(to_string(s.test_case)).c_str());
  line("scheme: %s/%s", std::string(to_string(s.reconstruction)).c_str(), std::string(to_string(s.limiter)).c_str());
  line("solver: %s", std::string(to_string(s.solver)).c_str());
  line("grid: %dx%d", o.matrix.ni, o.matrix.nj);
  line("matrix_dimension: %lld", static_cast<long long>(o.matrix.dimension()));
  line("matrix_nonzeros: %lld", static_cast<long long>(o.matrix.matrix.nonZeros()));
  line("base_residual_inf: %.17g", d.base_residual_inf);
  line("base_steady: %s", d.base_unsteady ? "no (linearisation about an unsteady base)" : "yes");
  line("uniform_stencil_faces: %d of %d", d.uniform_stencil_faces, d.face_count);
  line("one_sided_faces: %zu", d.one_sided_faces.size());
  for (const auto& f : d.one_sided_faces) line("  %s", f.c_str());
  line("eigenvalues: %zu (%s)", r.spectrum.size(), r.full_spectrum ? "full spectrum" : "leading only");
  line("max_real_lambda: %.17g", r.max_real());
  line("lambda_max: %.17g %.17g", r.lambda_max.real(), r.lambda_max.imag());
  line("eigenpair_residual: %.17g", r.eigen_residual);
  line("verdict: %s", o.unstable ? "unstable" : "stable");
  return out;
}

}  // namespace

void write_artifacts(const AnalysisOutcome& o, const Settings& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text(summary_text(o, s), dir / "summary.txt");

  const auto eigs = dir / "eigs.dat";
  std::FILE* f = open_for_writing(eigs);
  for (const Complex& z : o.report.spectrum) std::fprintf(f, "%.17g %.17g\n", z.real(), z.imag());
  close_checked(f, eigs);

  const ModeFields& m = o.report.mode;
  const std::pair<const char*, const Eigen::MatrixXcd*> modes[] = {{"rho", &m.rho}, {"u", &m.u}, {"v", &m.v}, {"p", &m.p}};
  const bool complex_mode = o.report.lambda_max.imag() != 0.0;
  for (const auto& [name, field] : modes) {
    write_field(field->real(), dir / ("mode_" + std::string(name) + ".dat"));
    if (complex_mode) write_field(field->imag(), dir / ("mode_" + std::string(name) + "_imag.dat"));
  }
  write_flow_files(o.input.base, dir / "flow");
  if (s.dump_matrix) write_matrix_triplets(o.matrix, dir / "matrix.dat");
}

std::vector<SweepRow> sweep(const Settings& s) {
  const std::vector<double> machs = s.sweep_mach.value_or(std::vector<double>{s.mach});
  const std::vector<RiemannSolver> solvers = s.sweep_solver.value_or(std::vector<RiemannSolver>{s.solver});
  const std::vector<ReconstructionKind> recons =
      s.sweep_reconstruction.value_or(std::vector<ReconstructionKind>{s.reconstruction});
  if (machs.empty()) throw Error(Module::cli, "sweep_mach list is empty");
  if (solvers.empty()) throw Error(Module::cli, "sweep_solver list is empty");
  if (recons.empty()) throw Error(Module::cli, "sweep_reconstruction list is empty");
  std::vector<SweepRow> rows;
  for (double mach : machs) {
    for (RiemannSolver solver : solvers) {
      for (ReconstructionKind recon : recons) {
        SweepRow row;
        row.mach = mach;
        row.solver = solver;
        row.reconstruction = recon;
        Settings point = s;
        point.mach = mach;
        point.solver = solver;
        point.reconstruction = recon;
        try {
          const AnalysisOutcome o = run_analysis(point);
          row.max_real = o.report.max_real();
          row.lambda_max = o.report.lambda_max;
          row.unstable = o.unstable;
        } catch (const Error& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_sweep_table(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::FILE* f = open_for_writing(path);
  std::fprintf(f, "M0,solver,reconstruction,maxReLambda,lambda_re,lambda_im,verdict,note\n");
  for (const SweepRow& r : rows) {
    std::string note = r.error;
    std::replace(note.begin(), note.end(), ',', ';');
    std::fprintf(f, "%.17g,%s,%s,%.17g,%.17g,%.17g,%s,%s\n", r.mach, std::string(to_string(r.solver)).c_str(),
                 std::string(to_string(r.reconstruction)).c_str(), r.max_real, r.lambda_max.real(),
                 r.lambda_max.imag(), !r.error.empty() ? "error" : (r.unstable ? "unstable" : "stable"),
                 note.c_str());
  }
  close_checked(f, path);
}

std::vector<ValidationCase> validation_cases(const Settings& s) {
  if (s.test_case != TestCase::normal_shock) {
    throw Error(Module::cli, "growth-rate validation is defined for the normal-shock case only");
  }
  const std::vector<double> machs = s.sweep_mach.value_or(std::vector<double>{s.mach});
  const std::vector<RiemannSolver> solvers = s.sweep_solver.value_or(std::vector<RiemannSolver>{s.solver});
  const std::vector<ReconstructionKind> recons =
      s.sweep_reconstruction.value_or(std::vector<ReconstructionKind>{s.reconstruction});
  std::vector<ValidationCase> cases;
  for (double mach : machs) {
    for (RiemannSolver solver : solvers) {
      for (ReconstructionKind recon : recons) {
        ValidationCase c;
        c.mach = mach;
        c.epsilon = s.epsilon;
        c.ni = s.ni;
        c.nj = s.nj;
        c.scheme = scheme_for(s);
        c.scheme.kind = recon;
        c.solver = solver;
        c.steps_1d = s.steps_1d;
        c.cfl_1d = s.cfl_1d;
        c.seed = s.seed;
        cases.push_back(c);
      }
    }
  }
  return cases;
}

int run(const Settings& s, std::ostream& log, std::ostream& err) {
  try {
    const std::filesystem::path dir = s.output_prefix;
    std::filesystem::create_directories(dir);
    const std::string echo = echo_settings(s);
    log << echo;
    write_text(echo, dir / "settings.txt");

    int status = kExitStable;
    if (s.sweep) {
      const std::vector<SweepRow> rows = sweep(s);
      write_sweep_table(rows, dir / "sweep.csv");
      for (const SweepRow& r : rows) {
        if (!r.error.empty()) {
          err << "sweep point M0=" << r.mach << " " << to_string(r.solver) << " failed: " << r.error << '\n';
          status = kExitError;
        } else if (r.unstable && status != kExitError) {
          status = kExitUnstable;
        }
      }
      log << "sweep: " << rows.size() << " points written to " << (dir / "sweep.csv").string() << '\n';
    } else {
      const AnalysisOutcome o = run_analysis(s);
      write_artifacts(o, s, dir);
      if (o.matrix.diagnostics.base_unsteady) {
        err << "warning: base-flow residual " << o.matrix.diagnostics.base_residual_inf
            << " exceeds the steadiness tolerance; the linearisation is about an unsteady state\n";
      }
      log << summary_text(o, s);
      status = o.unstable ? kExitUnstable : kExitStable;
    }

    if (s.validate) {
      std::vector<ValidationRow> rows;
      for (const ValidationCase& c : validation_cases(s)) rows.push_back(validate_point(c));
      write_validation_table(rows, dir / "validation.csv");
      log << "validation: " << rows.size() << " points written to " << (dir / "validation.csv").string() << '\n';
    }
    return status;
  } catch (const Error& e) {
    err << "error " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error [cli] " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace shockstab
