// Acceptance suite: one PASS/FAIL line per criterion. Usage: shockstab_acceptance [criterion ...]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "shockstab/app.hpp"
#include "shockstab/error.hpp"

using namespace shockstab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string name_of(auto value) { return std::string(to_string(value)); }

ReconstructionScheme scheme_of(ReconstructionKind kind) {
  ReconstructionScheme s;
  s.kind = kind;
  s.limiter = Limiter::van_albada;
  return s;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "shockstab_acceptance" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Outcome solver_consistency() {
  const Stopwatch clock;
  std::mt19937_64 rng(2024);
  const GasModel gas;
  double worst = 0.0;
  std::string worst_solver;
  for (RiemannSolver solver : kAllSolvers) {
    for (int n = 0; n < 1000; ++n) {
      const State U = oracle::random_state(rng);
      const auto nrm = oracle::random_normal(rng);
      const oracle::Vec4 exact = oracle::euler_flux(U, nrm[0], nrm[1]);
      const double err = (riemann_flux(solver, U, U, nrm[0], nrm[1], gas) - exact).norm() / exact.norm();
      if (err > worst) {
        worst = err;
        worst_solver = name_of(solver);
      }
    }
  }
  const double t = clock.seconds();
  return {worst <= 1e-10 && t < 5.0,
          fmt("8 solvers x 1000 states, worst relative error %.2e (%s), %.2f s", worst, worst_solver.c_str(), t)};
}

Outcome rankine_hugoniot() {
  const Stopwatch clock;
  const GasModel gas;
  double worst = 0.0;
  double worst_mach = 0.0;
  for (double mach : {1.01, 2.0, 3.0, 6.0, 20.0, 30.0}) {
    const ShockStates s = normal_shock_states(mach, gas);
    const oracle::Vec4 f1 = oracle::euler_flux(prim_to_cons(s.upstream, gas), 1.0, 0.0);
    const oracle::Vec4 f2 = oracle::euler_flux(prim_to_cons(s.downstream, gas), 1.0, 0.0);
    for (int k : {0, 1, 3}) {
      const double err = std::abs(f1[k] - f2[k]) / std::abs(f1[k]);
      if (err > worst) {
        worst = err;
        worst_mach = mach;
      }
    }
  }
  double oracle_gap = 0.0;
  for (double mach : {1.01, 2.0, 3.0, 6.0, 20.0, 30.0}) {
    const ShockStates s = normal_shock_states(mach, gas);
    const oracle::ShockPair o = oracle::normal_shock(mach);
    oracle_gap = std::max({oracle_gap, std::abs(s.downstream.rho - o.rho2) / o.rho2,
                           std::abs(s.downstream.u - o.u2) / o.u2, std::abs(s.downstream.p - o.p2) / o.p2});
  }
  const ShockStates m3 = normal_shock_states(3.0, gas);
  const double rho_err = std::abs(m3.downstream.rho / m3.upstream.rho - 27.0 / 7.0);
  const double u_err = std::abs(m3.downstream.u / m3.upstream.u - 7.0 / 27.0);
  const double t = clock.seconds();
  return {worst <= 1e-12 && rho_err <= 1e-12 && u_err <= 1e-12 && oracle_gap <= 1e-12 && t < 1.0,
          fmt("worst jump-flux mismatch %.2e (M0=%g); M0=3 ratio errors %.1e, %.1e; textbook shock ratios %.1e; "
              "%.3f s",
              worst, worst_mach, rho_err, u_err, oracle_gap, t)};
}

// Residual with the same faces as the library but with first-order values for
// every reconstructed component whose base stencil is uniform. The
// reconstruction has no derivative there; the stability matrix uses this limit.
class KinkFreeResidual {
 public:
  KinkFreeResidual(const FlowField& base, const GridMetrics& metrics, const Discretization& disc)
      : metrics_(metrics), disc_(disc) {
    const GhostField ghosts = fill_ghosts(base, metrics, disc.bc);
    const ExtendedField ext(base, ghosts);
    for_each_face(metrics, [&](const FaceRef& f, const Face& face) {
      const FaceStencil st = stencil(f, face, ext);
      std::array<bool, 8> flag{};
      for (int k = 0; k < 4; ++k) {
        flag[k] = uniform(st.cells[0][k], st.cells[1][k], st.cells[2][k]);
        flag[4 + k] = uniform(st.cells[3][k], st.cells[2][k], st.cells[1][k]);
      }
      flagged_components_ += static_cast<int>(std::count(flag.begin(), flag.end(), true));
      flags_.push_back(flag);
    });
  }

  int flagged_components() const { return flagged_components_; }

  Eigen::VectorXd operator()(const FlowField& field) const {
    const GhostField ghosts = fill_ghosts(field, metrics_, disc_.bc);
    const ExtendedField ext(field, ghosts);
    const GasModel& gas = field.gas();
    Eigen::VectorXd r = Eigen::VectorXd::Zero(4 * field.cell_count());
    std::size_t n = 0;
    for_each_face(metrics_, [&](const FaceRef& f, const Face& face) {
      const FaceStencil st = stencil(f, face, ext);
      const bool boundary_order = face_uses_boundary_order(f, metrics_, disc_);
      InterfaceStates s = face_states(st, boundary_order, disc_, gas);
      const auto& flag = flags_[n++];
      for (int k = 0; k < 4; ++k) {
        if (flag[k]) s.left[k] = st.cells[1][k];
        if (flag[4 + k]) s.right[k] = st.cells[2][k];
      }
      const Flux F = riemann_flux(disc_.solver, s.left, s.right, face.nx, face.ny, gas, disc_.solver_options);
      if (f.left_cell >= 0) r.segment<4>(4 * f.left_cell) -= face.length * F / volume(f.left_cell);
      if (f.right_cell >= 0) r.segment<4>(4 * f.right_cell) += face.length * F / volume(f.right_cell);
    });
    return r;
  }

 private:
  static bool uniform(double a, double b, double c) {
    return std::abs(b - a) < kSlopeGuard && std::abs(c - b) < kSlopeGuard;
  }

  static FaceStencil stencil(const FaceRef& f, const Face& face, const ExtendedField& ext) {
    FaceStencil st;
    for (int k = 0; k < 4; ++k) st.cells[k] = ext.at(f.stencil[k][0], f.stencil[k][1]);
    st.nx = face.nx;
    st.ny = face.ny;
    st.length = face.length;
    return st;
  }

  double volume(int cell) const { return metrics_.volume(cell % metrics_.ni(), cell / metrics_.ni()); }

  const GridMetrics& metrics_;
  const Discretization& disc_;
  std::vector<std::array<bool, 8>> flags_;
  int flagged_components_ = 0;
};

Outcome jacobian_oracle() {
  const Stopwatch clock;
  const GasModel gas;
  const FlowField base = init_normal_shock_rh(11, 11, 20.0, 0.1, 5, gas);
  const GridMetrics metrics = compute_metrics(cartesian_grid(11, 11));
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  std::string worst_case;
  std::string uniform;
  int kink_faces = 0;
  bool ok = true;
  for (ReconstructionKind kind : {ReconstructionKind::first_order, ReconstructionKind::muscl, ReconstructionKind::round}) {
    for (RiemannSolver solver : {RiemannSolver::roe, RiemannSolver::hll, RiemannSolver::hllc}) {
      Discretization disc;
      disc.scheme = scheme_of(kind);
      disc.solver = solver;
      disc.bc = normal_shock_boundaries(20.0, gas);
      const StabilityMatrix S = assemble(base, metrics, disc);
      const KinkFreeResidual oracle_residual(base, metrics, disc);
      const Eigen::VectorXd r0 = oracle_residual(base);
      if ((r0 - residual(base, metrics, disc)).lpNorm<Eigen::Infinity>() > 1e-12 * (1.0 + r0.norm())) {
        return {false, "kink-free oracle residual differs from the library residual at the base flow"};
      }
      for (int n = 0; n < 20; ++n) {
        Eigen::VectorXd dir(S.dimension());
        for (Eigen::Index k = 0; k < dir.size(); ++k) dir[k] = normal(rng);
        // The base sits on flux switches (zero normal velocity on transverse
        // faces), which leave the central difference with an O(h) error;
        // steps h and h/2 are combined to cancel it.
        auto central = [&](double h) {
          FlowField plus = base, minus = base;
          plus.flat() += h * dir;
          minus.flat() -= h * dir;
          return Eigen::VectorXd((oracle_residual(plus) - oracle_residual(minus)) / (2.0 * h));
        };
        const double h = 1e-7 * base.flat().norm() / dir.norm();
        const Eigen::VectorXd fd = 2.0 * central(0.5 * h) - central(h);
        const Eigen::VectorXd Sv = S.matrix * dir;
        const double err = (Sv - fd).norm() / std::max(Sv.norm(), dir.norm());
        if (err > worst) {
          worst = err;
          worst_case = name_of(kind) + "/" + name_of(solver);
        }
        ok = ok && err <= 1e-5;
      }
      kink_faces += static_cast<int>(S.diagnostics.one_sided_faces.size());
      if (kind != ReconstructionKind::first_order) {
        uniform = fmt(" %d of %d", oracle_residual.flagged_components(), 8 * S.diagnostics.face_count);
      }
    }
  }
  const double t = clock.seconds();
  return {ok && t < 60.0,
          fmt("9 schemes x 20 directions, worst relative error %.2e (%s), %.1f s; kink-fallback faces %d; "
              "uniform-stencil face components taken at their first-order limit:%s",
              worst, worst_case.c_str(), t, kink_faces, uniform.c_str())};
}

Outcome eigensolver_suite() {
  const Stopwatch clock;
  double worst = 0.0;
  auto check = [&](const Eigen::MatrixXd& A, Spectrum want) {
    Spectrum got = dense_eigenvalues(A);
    if (got.size() != want.size()) {
      worst = INFINITY;
      return;
    }
    for (const Complex& w : want) {
      auto best = std::min_element(got.begin(), got.end(),
                                   [&](Complex a, Complex b) { return std::abs(a - w) < std::abs(b - w); });
      worst = std::max(worst, std::abs(*best - w));
      got.erase(best);
    }
  };
  check(Eigen::Vector4d(1.0, -2.0, 3.5, 0.0).asDiagonal().toDenseMatrix(), {1.0, -2.0, 3.5, 0.0});
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  check(rot, {Complex(0, 1), Complex(0, -1)});
  Eigen::MatrixXd companion(3, 3);
  companion << 6, -11, 6, 1, 0, 0, 0, 1, 0;
  check(companion, {1.0, 2.0, 3.0});
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(8, 8);
  D.diagonal().head<4>() << 1.0, -2.0, 0.5, 3.0;
  D.block<2, 2>(4, 4) << 0.25, 1.5, -1.5, 0.25;
  D.block<2, 2>(6, 6) << -1.0, 0.5, -0.5, -1.0;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(8, 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) V(r, c) += 0.3 * u(rng);
  }
  const Eigen::MatrixXd planted = V * D * V.inverse();
  check(planted, {1.0, -2.0, 0.5, 3.0, Complex(0.25, 1.5), Complex(0.25, -1.5), Complex(-1.0, 0.5),
                  Complex(-1.0, -0.5)});
  const SparseMatrix sp = planted.sparseView();
  const EigenPair p = inverse_iteration(sp, Complex(0.25, 1.5));
  const double pair_residual =
      (planted.cast<Complex>() * p.vector - Complex(0.25, 1.5) * p.vector).norm() / planted.norm();
  const double t = clock.seconds();
  return {worst <= 1e-10 && pair_residual <= 1e-10 && t < 1.0,
          fmt("worst eigenvalue error %.2e, planted eigenvector residual %.2e, %.3f s", worst, pair_residual, t)};
}

Outcome growth_rate_replication() {
  const Stopwatch clock;
  int applicable = 0;
  int linear_misses = 0;
  int nonlinear_misses = 0;
  double worst_linear = 0.0;
  double worst_nonlinear = 0.0;
  std::string misses;
  std::vector<ValidationRow> rows;
  for (double mach : {2.0, 3.0, 6.0, 20.0}) {
    for (RiemannSolver solver : {RiemannSolver::roe, RiemannSolver::hllc}) {
      for (ReconstructionKind kind : {ReconstructionKind::muscl, ReconstructionKind::round}) {
        ValidationCase c;
        c.mach = mach;
        c.solver = solver;
        c.scheme = scheme_of(kind);
        const ValidationRow r = validate_point(c);
        rows.push_back(r);
        if (!r.error.empty()) {
          misses += fmt(" M0=%g %s/%s error", mach, name_of(solver).c_str(), name_of(kind).c_str());
          ++nonlinear_misses;
          continue;
        }
        if (!r.applicable) continue;
        ++applicable;
        worst_linear = std::max(worst_linear, r.rel_diff_linear);
        worst_nonlinear = std::max(worst_nonlinear, r.rel_diff_nonlinear);
        if (r.rel_diff_linear > 1e-3) ++linear_misses;
        if (r.rel_diff_nonlinear > 0.10) {
          ++nonlinear_misses;
          misses += fmt(" M0=%g %s/%s nonlinear %.4f vs %.4f (base residual %.1e)", mach, name_of(solver).c_str(),
                        name_of(kind).c_str(), r.sigma_nonlinear, r.max_real, r.base_residual);
        }
      }
    }
  }
  write_validation_table(rows, scratch("validation") / "validation.csv");
  const double t = clock.seconds();
  return {applicable > 0 && linear_misses == 0 && nonlinear_misses == 0 && t < 600.0,
          fmt("%d of 16 points applicable; linear worst %.1e (%d over 1e-3); nonlinear worst %.1f%% (%d over 10%%)%s; "
              "%.0f s",
              applicable, worst_linear, linear_misses, 100.0 * worst_nonlinear, nonlinear_misses,
              misses.empty() ? "" : (";" + misses).c_str(), t)};
}

struct Verdict {
  double max_real = 0.0;
  double tolerance = 0.0;  ///< neutral band half-width
  double below_neutral = 0.0;  ///< largest real part below the neutral band
};

Verdict analyse_scheme(RiemannSolver solver, ReconstructionKind kind) {
  Settings s;
  s.solver = solver;
  s.reconstruction = kind;
  const AnalysisOutcome o = run_analysis(s);
  Verdict v;
  v.max_real = o.report.max_real();
  v.tolerance = kNeutralTolerance * o.matrix.frobenius_norm();
  v.below_neutral = -INFINITY;
  for (const Complex& z : o.report.spectrum) {
    if (z.real() < -v.tolerance) v.below_neutral = std::max(v.below_neutral, z.real());
  }
  return v;
}

Outcome scheme_verdicts() {
  const Stopwatch clock;
  const Verdict hll1 = analyse_scheme(RiemannSolver::hll, ReconstructionKind::first_order);
  const Verdict hll2 = analyse_scheme(RiemannSolver::hll, ReconstructionKind::muscl);
  const Verdict hllc1 = analyse_scheme(RiemannSolver::hllc, ReconstructionKind::first_order);
  const Verdict hllc2 = analyse_scheme(RiemannSolver::hllc, ReconstructionKind::muscl);
  // A real part inside the solver's accuracy band is neither negative nor
  // positive; it is reported as neutral.
  auto negative = [](const Verdict& v) { return v.max_real < -v.tolerance; };
  auto positive = [](const Verdict& v) { return v.max_real > v.tolerance; };
  const bool hll_negative = negative(hll1) && negative(hll2);
  const bool hllc_positive = positive(hllc1) && positive(hllc2);
  const bool hllc_order = hllc2.max_real > hllc1.max_real;
  // Two values inside the neutral band cannot be ordered.
  const bool hll_order = hll2.max_real < hll1.max_real - std::max(hll1.tolerance, hll2.tolerance);
  const double t = clock.seconds();
  std::string detail = fmt(
      "HLL 1st %.3e 2nd %.3e (neutral band %.1e) -> %s; HLLC 1st %.5f 2nd %.5f -> %s; HLLC 2nd > 1st %s; HLL 2nd < "
      "1st %s; HLL rightmost below the neutral band 1st %.5f 2nd %.5f; %.1f s",
      hll1.max_real, hll2.max_real, hll1.tolerance, hll_negative ? "negative" : "neutral, not negative",
      hllc1.max_real, hllc2.max_real, hllc_positive ? "positive" : "not positive", hllc_order ? "yes" : "no",
      hll_order ? "yes" : "not established", hll1.below_neutral, hll2.below_neutral, t);
  return {hll_negative && hllc_positive && hllc_order && hll_order && t < 60.0, detail};
}

// Columns of the captured shock: density more than 1% of the jump away from
// both end states.
std::pair<int, int> shock_columns(const FlowField& base) {
  const double up = base.at(0, 0)[0];
  const double down = base.at(base.ni() - 1, 0)[0];
  int first = base.ni();
  int last = -1;
  for (int i = 0; i < base.ni(); ++i) {
    const double rho = base.at(i, 0)[0];
    if (std::min(rho - up, down - rho) > 0.01 * (down - up)) {
      first = std::min(first, i);
      last = i;
    }
  }
  return {first, last};
}

Outcome anchor_case() {
  const Stopwatch clock;
  const Settings s;
  const AnalysisOutcome o = run_analysis(s);
  const Complex lambda = o.report.lambda_max;
  const bool positive = lambda.real() > kNeutralTolerance * o.matrix.frobenius_norm();
  const bool real = std::abs(lambda.imag()) <= 1e-6 * std::abs(lambda.real());
  const Eigen::MatrixXd amp = mode_amplitude(o.report, s.ni, s.nj);
  Eigen::Index mi = 0, mj = 0;
  amp.maxCoeff(&mi, &mj);
  const auto [first, last] = shock_columns(o.input.base);
  const bool in_shock = mi >= first && mi <= last;
  bool downstream_dominates = first <= last;
  std::string columns;
  for (int d = 1; first - d >= 0 && last + d < s.ni; ++d) {
    const double upstream = amp.row(first - d).maxCoeff();
    const double downstream = amp.row(last + d).maxCoeff();
    downstream_dominates = downstream_dominates && downstream > upstream;
    columns += fmt(" d=%d %.1e/%.1e", d, downstream, upstream);
  }
  const double reference = 0.19526;
  const double offset = (lambda.real() - reference) / reference;
  const bool soft = std::abs(offset) <= 0.25;
  const double t = clock.seconds();
  const bool hard = positive && real && in_shock && downstream_dominates;
  return {hard && t < 60.0,
          fmt("lambda_max = %.5f %+.1ei; positive %s, real %s; peak amplitude column %d, shock columns %d-%d; "
              "downstream/upstream peak by distance from the shock:%s; soft band %s (%+.1f%% from 0.19526, attribution in the decisions log); "
              "%.1f s",
              lambda.real(), lambda.imag(), positive ? "yes" : "no", real ? "yes" : "no", static_cast<int>(mi), first, last,
              columns.c_str(), soft ? "met" : "missed", 100.0 * offset, t)};
}

Settings aspect_case(int nj, EigenPath path) {
  Settings s;
  s.ni = 50;
  s.nj = nj;
  s.domain_x = 50.0;
  s.domain_y = 50.0;
  s.eigen_path = path;
  return s;
}

Outcome aspect_ratio_trend() {
  const Stopwatch clock;
  // Agreement of the iterative path with the dense spectrum on the smaller grid.
  const AnalysisCase small = prepare_case(aspect_case(10, EigenPath::dense));
  const StabilityMatrix S = assemble(small.base, small.metrics, small.disc);
  Spectrum dense = dense_eigenvalues(S.dense());
  EigenOptions iterative;
  iterative.path = EigenPath::arnoldi;
  const SpectrumResult leading = eigensolve(S, iterative);
  std::sort(dense.begin(), dense.end(), [](Complex a, Complex b) { return a.real() > b.real(); });
  double agreement = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    agreement = std::max(agreement, std::abs(leading.values[k].real() - dense[k].real()));
    double nearest = INFINITY;
    for (const Complex& z : dense) nearest = std::min(nearest, std::abs(z - leading.values[k]));
    agreement = std::max(agreement, nearest);
  }
  const double coarse = run_analysis(aspect_case(10, EigenPath::arnoldi)).report.max_real();
  const double fine = run_analysis(aspect_case(50, EigenPath::arnoldi)).report.max_real();
  const double t = clock.seconds();
  return {agreement <= 1e-6 && coarse > 0.0 && fine > 0.0 && coarse < fine && t < 1800.0,
          fmt("max Re 50x10 %.5f, 50x50 %.5f (iterative path); dense vs iterative on 50x10 leading 10 agree to "
              "%.1e; %.0f s",
              coarse, fine, agreement, t)};
}

Outcome flow_file_ingestion() {
  const Stopwatch clock;
  const GasModel gas;
  const auto dir = scratch("ingestion");
  write_flow_files(init_normal_shock_rh(11, 11, 20.0, 0.1, 5, gas), dir / "InitialFlow");
  std::string detail;
  bool ok = true;
  double worst = 0.0;
  for (RiemannSolver solver : {RiemannSolver::hll, RiemannSolver::hllc}) {
    Settings internal;
    internal.init_mode = InitMode::rankine_hugoniot;
    internal.reconstruction = ReconstructionKind::first_order;
    internal.solver = solver;
    Settings from_file = internal;
    from_file.init_mode = InitMode::flow_files;
    from_file.flow_file_prefix = (dir / "InitialFlow").string();
    const AnalysisOutcome a = run_analysis(internal);
    const AnalysisOutcome b = run_analysis(from_file);
    const double diff = std::abs(a.report.max_real() - b.report.max_real());
    worst = std::max(worst, diff);
    const bool want_unstable = solver == RiemannSolver::hllc;
    ok = ok && diff <= 1e-10 && a.unstable == b.unstable && b.unstable == want_unstable;
    detail += fmt("%s %s (file %.3e, internal %.3e); ", name_of(solver).c_str(),
                  b.unstable ? "unstable" : "stable", b.report.max_real(), a.report.max_real());
  }

  // Curved-wall external case written to disk and analysed from the files.
  const ExternalFlowCase ext = external_flow_case(20, 20);
  write_grid(ext.grid, dir / "curved_grid.dat");
  write_flow_files(ext.field, dir / "ExternalFlow");
  for (RiemannSolver solver : {RiemannSolver::hll, RiemannSolver::hllc}) {
    Settings s;
    s.test_case = TestCase::external_flow;
    s.init_mode = InitMode::flow_files;
    s.grid_file = (dir / "curved_grid.dat").string();
    s.flow_file_prefix = (dir / "ExternalFlow").string();
    s.reconstruction = ReconstructionKind::first_order;
    s.solver = solver;
    s.ni = 20;
    s.nj = 20;
    try {
      const AnalysisOutcome o = run_analysis(s);
      detail += fmt("curved wall 20x20 %s max Re %.3e; ", name_of(solver).c_str(), o.report.max_real());
    } catch (const Error& e) {
      ok = false;
      detail += "curved wall " + name_of(solver) + " failed: " + e.what() + "; ";
    }
  }
  const double t = clock.seconds();
  return {ok, detail + fmt("|file - internal| <= %.1e; %.1f s", worst, t)};
}

std::vector<std::pair<std::string, std::string>> read_tree(const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    out.emplace_back(entry.path().filename().string(),
                     std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism() {
  const Stopwatch clock;
  std::vector<std::vector<std::pair<std::string, std::string>>> trees;
  for (const char* name : {"run_a", "run_b"}) {
    Settings s;
    s.dump_matrix = true;
    s.output_prefix = scratch(name).string();
    const AnalysisOutcome o = run_analysis(s);
    write_artifacts(o, s, s.output_prefix);
    // settings.txt carries the output prefix, which differs by design.
    trees.push_back(read_tree(s.output_prefix));
  }
  const bool same = trees[0] == trees[1] && !trees[0].empty();
  std::size_t bytes = 0;
  for (const auto& [name, data] : trees[0]) bytes += data.size();
  const double t = clock.seconds();
  return {same, fmt("%zu artifact files, %zu bytes, %s; %.1f s", trees[0].size(), bytes,
                    same ? "bit-identical" : "differ", t)};
}

const std::vector<std::pair<int, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<int, std::function<Outcome()>>> list = {
      {1, solver_consistency}, {2, rankine_hugoniot},        {3, jacobian_oracle},   {4, eigensolver_suite},
      {5, growth_rate_replication}, {6, scheme_verdicts},    {7, anchor_case},       {8, aspect_ratio_trend},
      {9, flow_file_ingestion}, {10, determinism}};
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int a = 1; a < argc; ++a) wanted.push_back(std::atoi(argv[a]));
  int failures = 0;
  for (const auto& [number, check] : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), number) == wanted.end()) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", number, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
