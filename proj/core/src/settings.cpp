#include "shockstab/settings.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "shockstab/error.hpp"

namespace shockstab {

std::string_view to_string(TestCase value) {
  return value == TestCase::normal_shock ? "normal_shock" : "external_flow";
}

std::string_view to_string(InitMode value) {
  switch (value) {
    case InitMode::rankine_hugoniot: return "rankine_hugoniot";
    case InitMode::oned_projection: return "oned_projection";
    case InitMode::flow_files: return "flow_files";
  }
  return "unknown";
}

std::string_view to_string(EigenPath value) {
  switch (value) {
    case EigenPath::automatic: return "automatic";
    case EigenPath::dense: return "dense";
    case EigenPath::arnoldi: return "arnoldi";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(Module::cli, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + message);
}

double to_double(std::string_view key, std::string_view v, int line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(line, std::string(key) + ": not a number: " + std::string(v));
  return out;
}

long to_long(std::string_view key, std::string_view v, int line) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(line, std::string(key) + ": not an integer: " + std::string(v));
  return out;
}

int to_int(std::string_view key, std::string_view v, int line) {
  const long x = to_long(key, v, line);
  if (x < -2147483647L || x > 2147483647L) fail(line, std::string(key) + ": out of range: " + std::string(v));
  return static_cast<int>(x);
}

std::uint64_t to_u64(std::string_view key, std::string_view v, int line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(line, std::string(key) + ": not an unsigned integer");
  return out;
}

bool to_bool(std::string_view key, std::string_view v, int line) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  fail(line, std::string(key) + ": expected true or false, got " + std::string(v));
}

template <typename T, typename Parse>
T to_enum(std::string_view key, std::string_view v, int line, Parse parse) {
  const auto parsed = parse(v);
  if (!parsed) fail(line, std::string(key) + ": invalid value '" + std::string(v) + "'");
  return *parsed;
}

std::optional<TestCase> parse_test_case(std::string_view v) {
  if (v == "normal_shock") return TestCase::normal_shock;
  if (v == "external_flow") return TestCase::external_flow;
  return std::nullopt;
}

std::optional<InitMode> parse_init_mode(std::string_view v) {
  for (auto m : {InitMode::rankine_hugoniot, InitMode::oned_projection, InitMode::flow_files}) {
    if (to_string(m) == v) return m;
  }
  return std::nullopt;
}

std::optional<EigenPath> parse_eigen_path(std::string_view v) {
  for (auto m : {EigenPath::automatic, EigenPath::dense, EigenPath::arnoldi}) {
    if (to_string(m) == v) return m;
  }
  return std::nullopt;
}

std::optional<ReconstructionVariables> parse_variables(std::string_view v) {
  if (v == "conservative") return ReconstructionVariables::conservative;
  if (v == "primitive") return ReconstructionVariables::primitive;
  return std::nullopt;
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> items;
  if (trim(v).empty()) return items;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    items.push_back(trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::pair<int, int> to_grid(std::string_view key, std::string_view v, int line) {
  const auto x = v.find('x');
  if (x == std::string_view::npos) fail(line, std::string(key) + ": expected <ni>x<nj>, got " + std::string(v));
  return {to_int(key, trim(v.substr(0, x)), line), to_int(key, trim(v.substr(x + 1)), line)};
}

std::optional<BoundaryKind> to_bc(std::string_view key, std::string_view v, int line) {
  if (v == "default") return std::nullopt;
  return to_enum<BoundaryKind>(key, v, line, parse_boundary_kind);
}

std::string_view canonical_key(std::string_view key) {
  if (key == "recon") return "reconstruction";
  if (key == "riemann_solver") return "solver";
  return key;
}

void apply(Settings& s, std::string_view key, std::string_view v, int line) {
  if (v.empty() && key.substr(0, 6) != "sweep_") fail(line, std::string(key) + ": empty value");
  if (key == "test_case") s.test_case = to_enum<TestCase>(key, v, line, parse_test_case);
  else if (key == "reconstruction") s.reconstruction = to_enum<ReconstructionKind>(key, v, line, parse_reconstruction);
  else if (key == "limiter") s.limiter = to_enum<Limiter>(key, v, line, parse_limiter);
  else if (key == "variables") s.variables = to_enum<ReconstructionVariables>(key, v, line, parse_variables);
  else if (key == "solver") s.solver = to_enum<RiemannSolver>(key, v, line, parse_solver);
  else if (key == "mach") s.mach = to_double(key, v, line);
  else if (key == "epsilon") s.epsilon = to_double(key, v, line);
  else if (key == "init_mode") s.init_mode = to_enum<InitMode>(key, v, line, parse_init_mode);
  else if (key == "steps_1d") s.steps_1d = to_int(key, v, line);
  else if (key == "cfl_1d") s.cfl_1d = to_double(key, v, line);
  else if (key == "grid") std::tie(s.ni, s.nj) = to_grid(key, v, line);
  else if (key == "domain_x") s.domain_x = to_double(key, v, line);
  else if (key == "domain_y") s.domain_y = to_double(key, v, line);
  else if (key == "grid_file") s.grid_file = std::string(v);
  else if (key == "flow_file_prefix") s.flow_file_prefix = std::string(v);
  else if (key == "gamma") s.gamma = to_double(key, v, line);
  else if (key == "shock_column") s.shock_column = to_int(key, v, line);
  else if (key == "bc_left") s.bc_left = to_bc(key, v, line);
  else if (key == "bc_right") s.bc_right = to_bc(key, v, line);
  else if (key == "bc_bottom") s.bc_bottom = to_bc(key, v, line);
  else if (key == "bc_top") s.bc_top = to_bc(key, v, line);
  else if (key == "p_exit") s.p_exit = to_double(key, v, line);
  else if (key == "inflow_rho") s.inflow_rho = to_double(key, v, line);
  else if (key == "inflow_u") s.inflow_u = to_double(key, v, line);
  else if (key == "inflow_v") s.inflow_v = to_double(key, v, line);
  else if (key == "inflow_p") s.inflow_p = to_double(key, v, line);
  else if (key == "entropy_fix") s.entropy_fix = to_bool(key, v, line);
  else if (key == "frozen_limiter") s.frozen_limiter = to_bool(key, v, line);
  else if (key == "first_order_at_boundary") s.first_order_at_boundary = to_bool(key, v, line);
  else if (key == "output_prefix") s.output_prefix = std::string(v);
  else if (key == "validate") s.validate = to_bool(key, v, line);
  else if (key == "dump_matrix") s.dump_matrix = to_bool(key, v, line);
  else if (key == "sweep") s.sweep = to_bool(key, v, line);
  else if (key == "sweep_mach") {
    std::vector<double> xs;
    for (auto item : split_list(v)) xs.push_back(to_double(key, item, line));
    s.sweep_mach = xs;
  } else if (key == "sweep_solver") {
    std::vector<RiemannSolver> xs;
    for (auto item : split_list(v)) xs.push_back(to_enum<RiemannSolver>(key, item, line, parse_solver));
    s.sweep_solver = xs;
  } else if (key == "sweep_reconstruction") {
    std::vector<ReconstructionKind> xs;
    for (auto item : split_list(v)) xs.push_back(to_enum<ReconstructionKind>(key, item, line, parse_reconstruction));
    s.sweep_reconstruction = xs;
  } else if (key == "eigen_path") s.eigen_path = to_enum<EigenPath>(key, v, line, parse_eigen_path);
  else if (key == "dense_cap") s.dense_cap = to_long(key, v, line);
  else if (key == "seed") s.seed = to_u64(key, v, line);
  else fail(line, "unknown key '" + std::string(key) + "'");
}

}  // namespace

void validate(const Settings& s) {
  if (!(s.epsilon >= 0.0 && s.epsilon <= 1.0)) {
    fail(0, "epsilon must lie in [0, 1], got " + std::to_string(s.epsilon));
  }
  if (s.test_case == TestCase::normal_shock && !(s.mach >= 1.0)) {
    fail(0, "mach must be at least 1 for the normal shock, got " + std::to_string(s.mach));
  }
  if (!(s.gamma > 1.0)) fail(0, "gamma must exceed 1");
  if (s.ni < 1 || s.nj < 1) fail(0, "grid needs at least one cell in each direction");
  if (s.steps_1d < 1) fail(0, "steps_1d must be at least 1");
  if (!(s.cfl_1d > 0.0 && s.cfl_1d <= 1.0)) fail(0, "cfl_1d must lie in (0, 1]");
  if (s.domain_x < 0.0 || s.domain_y < 0.0) fail(0, "domain extents must not be negative");
  if (s.dense_cap < 1) fail(0, "dense_cap must be positive");
  if (s.p_exit && !(*s.p_exit > 0.0)) fail(0, "p_exit must be positive");
  if (!(s.inflow_rho > 0.0 && s.inflow_p > 0.0)) fail(0, "inflow density and pressure must be positive");
  if (s.test_case == TestCase::external_flow) {
    if (s.flow_file_prefix.empty()) fail(0, "test_case=external_flow requires flow_file_prefix");
    if (s.grid_file.empty()) fail(0, "test_case=external_flow requires grid_file");
  }
  if (s.init_mode == InitMode::flow_files && s.flow_file_prefix.empty()) {
    fail(0, "init_mode=flow_files requires flow_file_prefix");
  }
}

Settings parse_settings_text(std::string_view text) {
  Settings s;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string_view key = canonical_key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) fail(line_no, "duplicate key '" + std::string(key) + "'");
    apply(s, key, value, line_no);
  }
  if (s.test_case == TestCase::normal_shock && !seen.contains("mach")) {
    fail(0, "test_case=normal_shock requires mach");
  }
  validate(s);
  return s;
}

Settings parse_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Module::cli, "cannot open settings file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_settings_text(buf.str());
}

namespace {

// Shortest text that reads back to the same double.
std::string num(double x) {
  char buf[64];
  const auto end = std::to_chars(buf, buf + sizeof buf, x).ptr;
  return std::string(buf, end);
}

}  // namespace

std::string echo_settings(const Settings& s) {
  std::ostringstream o;
  auto kv = [&](std::string_view key, const std::string& value) { o << key << " = " << value << '\n'; };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  kv("test_case", std::string(to_string(s.test_case)));
  kv("reconstruction", std::string(to_string(s.reconstruction)));
  kv("limiter", std::string(to_string(s.limiter)));
  kv("variables", s.variables == ReconstructionVariables::conservative ? "conservative" : "primitive");
  kv("solver", std::string(to_string(s.solver)));
  kv("mach", num(s.mach));
  kv("epsilon", num(s.epsilon));
  kv("init_mode", std::string(to_string(s.init_mode)));
  kv("steps_1d", std::to_string(s.steps_1d));
  kv("cfl_1d", num(s.cfl_1d));
  kv("grid", std::to_string(s.ni) + "x" + std::to_string(s.nj));
  kv("domain_x", num(s.domain_x));
  kv("domain_y", num(s.domain_y));
  if (!s.grid_file.empty()) kv("grid_file", s.grid_file);
  if (!s.flow_file_prefix.empty()) kv("flow_file_prefix", s.flow_file_prefix);
  kv("gamma", num(s.gamma));
  kv("shock_column", std::to_string(s.shock_column));
  auto bc = [&](std::string_view key, const std::optional<BoundaryKind>& b) {
    kv(key, b ? std::string(to_string(*b)) : "default");
  };
  bc("bc_left", s.bc_left);
  bc("bc_right", s.bc_right);
  bc("bc_bottom", s.bc_bottom);
  bc("bc_top", s.bc_top);
  if (s.p_exit) kv("p_exit", num(*s.p_exit));
  kv("inflow_rho", num(s.inflow_rho));
  if (s.inflow_u) kv("inflow_u", num(*s.inflow_u));
  kv("inflow_v", num(s.inflow_v));
  kv("inflow_p", num(s.inflow_p));
  kv("entropy_fix", flag(s.entropy_fix));
  kv("frozen_limiter", flag(s.frozen_limiter));
  kv("first_order_at_boundary", flag(s.first_order_at_boundary));
  kv("output_prefix", s.output_prefix);
  kv("validate", flag(s.validate));
  kv("dump_matrix", flag(s.dump_matrix));
  kv("sweep", flag(s.sweep));
  auto list = [&](std::string_view key, const auto& values, auto fmt) {
    if (!values) return;
    std::string joined;
    for (const auto& x : *values) joined += (joined.empty() ? "" : ",") + fmt(x);
    kv(key, joined);
  };
  list("sweep_mach", s.sweep_mach, [](double x) { return num(x); });
  list("sweep_solver", s.sweep_solver, [](RiemannSolver x) { return std::string(to_string(x)); });
  list("sweep_reconstruction", s.sweep_reconstruction, [](ReconstructionKind x) { return std::string(to_string(x)); });
  kv("eigen_path", std::string(to_string(s.eigen_path)));
  kv("dense_cap", std::to_string(s.dense_cap));
  kv("seed", std::to_string(s.seed));
  return o.str();
}

}  // namespace shockstab
