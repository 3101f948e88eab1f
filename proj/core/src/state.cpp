#include "shockstab/state.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "shockstab/error.hpp"

namespace shockstab {

void validate(const GasModel& gas) {
  if (!(gas.gamma > 1.0) || !std::isfinite(gas.gamma)) {
    throw Error(Module::state, "gamma must exceed 1, got " + std::to_string(gas.gamma));
  }
}

bool is_physical(const Primitive& w) {
  return std::isfinite(w.rho) && std::isfinite(w.u) && std::isfinite(w.v) && std::isfinite(w.p) &&
         w.rho > 0.0 && w.p > 0.0;
}

bool is_physical(const State& U, const GasModel& gas) {
  return U.allFinite() && U[0] > 0.0 && pressure(U, gas) > 0.0;
}

State prim_to_cons(const Primitive& w, const GasModel& gas) {
  if (!is_physical(w)) {
    std::ostringstream os;
    os << "non-physical primitive state (rho=" << w.rho << ", p=" << w.p << ")";
    throw Error(Module::state, os.str());
  }
  return {w.rho, w.rho * w.u, w.rho * w.v,
          w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)};
}

Primitive cons_to_prim(const State& U, const GasModel& gas) {
  Primitive w{U[0], U[1] / U[0], U[2] / U[0], pressure(U, gas)};
  if (!is_physical(w)) {
    std::ostringstream os;
    os << "non-physical conservative state (rho=" << U[0] << ", p=" << w.p << ")";
    throw Error(Module::state, os.str());
  }
  return w;
}

double sound_speed(const Primitive& w, const GasModel& gas) { return std::sqrt(gas.gamma * w.p / w.rho); }

FlowField::FlowField(int ni, int nj, GasModel gas, State fill) : ni_(ni), nj_(nj), gas_(gas) {
  if (ni < 1 || nj < 1) throw Error(Module::state, "flow field needs at least one cell per direction");
  validate(gas_);
  cells_.assign(static_cast<std::size_t>(ni) * static_cast<std::size_t>(nj), fill);
}

Eigen::Map<Eigen::VectorXd> FlowField::flat() {
  return {cells_.front().data(), 4 * static_cast<Eigen::Index>(cells_.size())};
}

Eigen::Map<const Eigen::VectorXd> FlowField::flat() const {
  return {cells_.front().data(), 4 * static_cast<Eigen::Index>(cells_.size())};
}

void FlowField::check_physical() const {
  for (int j = 0; j < nj_; ++j) {
    for (int i = 0; i < ni_; ++i) {
      if (!is_physical(at(i, j), gas_)) {
        std::ostringstream os;
        os << "non-physical state in cell (" << i << ", " << j << "): rho=" << at(i, j)[0]
           << ", p=" << pressure(at(i, j), gas_);
        throw Error(Module::state, os.str());
      }
    }
  }
}

ShockStates normal_shock_states(double mach, const GasModel& gas) {
  validate(gas);
  if (!(mach >= 1.0) || !std::isfinite(mach)) {
    throw Error(Module::state, "normal shock needs upstream Mach >= 1, got " + std::to_string(mach));
  }
  const double g = gas.gamma;
  const double m2 = mach * mach;
  const Primitive up{1.0, 1.0, 0.0, 1.0 / (g * m2)};
  const double density_ratio = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
  const double pressure_ratio = 1.0 + 2.0 * g * (m2 - 1.0) / (g + 1.0);
  const Primitive down{up.rho * density_ratio, up.u / density_ratio, 0.0, up.p * pressure_ratio};
  return {up, down};
}

State conservative_blend(const State& upstream, const State& downstream, double epsilon) {
  return epsilon * upstream + (1.0 - epsilon) * downstream;
}

FlowField init_normal_shock_rh(int ni, int nj, double mach, double epsilon, int shock_col,
                               const GasModel& gas, const ShockCellModel& shock_cell) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(Module::state, "epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  }
  if (shock_col < 1 || shock_col > ni - 2) {
    throw Error(Module::state, "shock column " + std::to_string(shock_col) + " outside [1, " +
                                   std::to_string(ni - 2) + "]");
  }
  const ShockStates shock = normal_shock_states(mach, gas);
  const State up = prim_to_cons(shock.upstream, gas);
  const State down = prim_to_cons(shock.downstream, gas);
  const State mid = shock_cell(up, down, epsilon);
  if (!is_physical(mid, gas)) throw Error(Module::state, "shock-cell state is not physical");

  FlowField field(ni, nj, gas);
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      field.at(i, j) = i < shock_col ? up : (i > shock_col ? down : mid);
    }
  }
  return field;
}

std::filesystem::path flow_file_path(const std::filesystem::path& prefix, const char* variable) {
  return std::filesystem::path(prefix.string() + "_" + variable + ".dat");
}

namespace {

std::vector<double> read_column(const std::filesystem::path& path, std::size_t expected) {
  std::ifstream in(path);
  if (!in) throw Error(Module::state, "cannot open flow file " + path.string());
  std::vector<double> values;
  values.reserve(expected);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw Error(Module::state, "malformed value '" + token + "' in " + path.string() + " (record " +
                                     std::to_string(values.size() + 1) + ")");
    }
    values.push_back(value);
  }
  if (values.size() != expected) {
    throw Error(Module::state, "cell count mismatch in " + path.string() + ": expected " +
                                   std::to_string(expected) + " values, found " +
                                   std::to_string(values.size()));
  }
  return values;
}

}  // namespace

FlowField read_flow_files(const std::filesystem::path& prefix, int ni, int nj, const GasModel& gas) {
  const auto n = static_cast<std::size_t>(ni) * static_cast<std::size_t>(nj);
  const auto rho = read_column(flow_file_path(prefix, "rho"), n);
  const auto u = read_column(flow_file_path(prefix, "u"), n);
  const auto v = read_column(flow_file_path(prefix, "v"), n);
  const auto p = read_column(flow_file_path(prefix, "p"), n);
  FlowField field(ni, nj, gas);
  for (std::size_t c = 0; c < n; ++c) {
    const Primitive w{rho[c], u[c], v[c], p[c]};
    if (!is_physical(w)) {
      const auto ci = static_cast<int>(c);
      throw Error(Module::state, "non-physical flow-file values at cell (" + std::to_string(ci % ni) +
                                     ", " + std::to_string(ci / ni) + ")");
    }
    field[static_cast<int>(c)] = prim_to_cons(w, gas);
  }
  return field;
}

void write_flow_files(const FlowField& field, const std::filesystem::path& prefix) {
  const char* names[4] = {"rho", "u", "v", "p"};
  for (int k = 0; k < 4; ++k) {
    const auto path = flow_file_path(prefix, names[k]);
    std::ofstream out(path);
    if (!out) throw Error(Module::state, "cannot write flow file " + path.string());
    out << std::setprecision(17);
    for (int c = 0; c < field.cell_count(); ++c) {
      const Primitive w = cons_to_prim(field[c], field.gas());
      const double value[4] = {w.rho, w.u, w.v, w.p};
      out << value[k] << '\n';
    }
  }
}

}  // namespace shockstab
