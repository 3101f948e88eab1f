#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "shockstab/harness.hpp"
#include "shockstab/settings.hpp"
#include "shockstab/stability.hpp"

namespace shockstab {

inline constexpr int kExitStable = 0;
inline constexpr int kExitUnstable = 1;
inline constexpr int kExitError = 2;

/// Grid, base flow and discretization described by a Settings value.
struct AnalysisCase {
  Grid grid;
  GridMetrics metrics;
  FlowField base;
  Discretization disc;
};

AnalysisCase prepare_case(const Settings& settings);

/// Boundary set for the settings, defaults per test case plus overrides.
BoundaryConditionSet boundaries_for(const Settings& settings);

struct AnalysisOutcome {
  AnalysisCase input;
  StabilityMatrix matrix;
  EigenReport report;
  bool unstable = false;
};

/// initialise -> assemble -> eigensolve -> most unstable eigenpair.
AnalysisOutcome run_analysis(const Settings& settings);

/// Writes summary.txt, eigs.dat, mode_*.dat and flow_*.dat (and matrix.dat if
/// requested) into `dir`.
void write_artifacts(const AnalysisOutcome& outcome, const Settings& settings, const std::filesystem::path& dir);

struct SweepRow {
  double mach = 0.0;
  RiemannSolver solver = RiemannSolver::roe;
  ReconstructionKind reconstruction = ReconstructionKind::first_order;
  double max_real = 0.0;
  Complex lambda_max;
  bool unstable = false;
  std::string error;
};

/// Cartesian product of the sweep lists (a missing list means the single
/// value from the settings). Failed points are recorded, not fatal. Throws on
/// an explicitly empty list.
std::vector<SweepRow> sweep(const Settings& settings);
void write_sweep_table(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

/// Growth-rate validation cases for the settings (sweep product if lists are
/// present, otherwise the single case).
std::vector<ValidationCase> validation_cases(const Settings& settings);

/// Full command: echoes the settings to `log`, runs the analysis or sweep and
/// writes everything under settings.output_prefix. Returns kExitStable,
/// kExitUnstable or kExitError; errors are reported on `err` with their module.
int run(const Settings& settings, std::ostream& log, std::ostream& err);

}  // namespace shockstab
