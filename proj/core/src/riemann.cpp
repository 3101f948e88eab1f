#include "shockstab/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shockstab/error.hpp"

namespace shockstab {

std::string_view to_string(RiemannSolver solver) {
  switch (solver) {
    case RiemannSolver::roe: return "roe";
    case RiemannSolver::hllc: return "hllc";
    case RiemannSolver::hll: return "hll";
    case RiemannSolver::van_leer: return "van_leer";
    case RiemannSolver::ausm_plus: return "ausm_plus";
    case RiemannSolver::slau: return "slau";
    case RiemannSolver::hlle: return "hlle";
    case RiemannSolver::hllem: return "hllem";
  }
  return "unknown";
}

std::optional<RiemannSolver> parse_solver(std::string_view name) {
  for (RiemannSolver s : kAllSolvers) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

// State expressed in the face frame: u is the normal velocity, v the
// tangential one.
struct Side {
  double rho, u, v, p, E, a, H;

  Eigen::Vector4d conserved() const { return {rho, rho * u, rho * v, E}; }
  Flux flux() const { return {rho * u, rho * u * u + p, rho * u * v, u * (E + p)}; }
};

Side to_face_frame(const State& U, double nx, double ny, const GasModel& gas) {
  const double rho = U[0];
  const double ux = U[1] / rho;
  const double uy = U[2] / rho;
  const double p = pressure(U, gas);
  Side s;
  s.rho = rho;
  s.u = ux * nx + uy * ny;
  s.v = -ux * ny + uy * nx;
  s.p = p;
  s.E = U[3];
  s.a = std::sqrt(gas.gamma * p / rho);
  s.H = (U[3] + p) / rho;
  return s;
}

Flux from_face_frame(const Flux& f, double nx, double ny) {
  return {f[0], f[1] * nx - f[2] * ny, f[1] * ny + f[2] * nx, f[3]};
}

struct RoeAverage {
  double rho, u, v, H, a;
};

RoeAverage roe_average(const Side& L, const Side& R, const GasModel& gas) {
  const double sl = std::sqrt(L.rho);
  const double sr = std::sqrt(R.rho);
  const double w = 1.0 / (sl + sr);
  RoeAverage m;
  m.rho = sl * sr;
  m.u = (sl * L.u + sr * R.u) * w;
  m.v = (sl * L.v + sr * R.v) * w;
  m.H = (sl * L.H + sr * R.H) * w;
  const double a2 = (gas.gamma - 1.0) * (m.H - 0.5 * (m.u * m.u + m.v * m.v));
  if (!(a2 > 0.0)) throw Error(Module::numerics, "Roe-averaged sound speed is not real");
  m.a = std::sqrt(a2);
  return m;
}

// Wave strengths and right eigenvectors of the Roe matrix, ordered
// (u - a, entropy, shear, u + a).
struct RoeWaves {
  double alpha[4];
  double lambda[4];
  Eigen::Vector4d r[4];
};

RoeWaves roe_waves(const Side& L, const Side& R, const RoeAverage& m) {
  const double drho = R.rho - L.rho;
  const double du = R.u - L.u;
  const double dv = R.v - L.v;
  const double dp = R.p - L.p;
  const double a2 = m.a * m.a;
  RoeWaves w;
  w.alpha[0] = (dp - m.rho * m.a * du) / (2.0 * a2);
  w.alpha[1] = drho - dp / a2;
  w.alpha[2] = m.rho * dv;
  w.alpha[3] = (dp + m.rho * m.a * du) / (2.0 * a2);
  w.lambda[0] = m.u - m.a;
  w.lambda[1] = m.u;
  w.lambda[2] = m.u;
  w.lambda[3] = m.u + m.a;
  w.r[0] = {1.0, m.u - m.a, m.v, m.H - m.u * m.a};
  w.r[1] = {1.0, m.u, m.v, 0.5 * (m.u * m.u + m.v * m.v)};
  w.r[2] = {0.0, 0.0, 1.0, m.v};
  w.r[3] = {1.0, m.u + m.a, m.v, m.H + m.u * m.a};
  return w;
}

Flux roe(const Side& L, const Side& R, const GasModel& gas, const SolverOptions& opt) {
  const RoeAverage m = roe_average(L, R, gas);
  const RoeWaves w = roe_waves(L, R, m);
  Flux f = 0.5 * (L.flux() + R.flux());
  const double fix = opt.entropy_fix_fraction * m.a;
  for (int k = 0; k < 4; ++k) {
    double speed = std::abs(w.lambda[k]);
    if (opt.roe_entropy_fix && speed < fix) speed = (speed * speed + fix * fix) / (2.0 * fix);
    f -= 0.5 * speed * w.alpha[k] * w.r[k];
  }
  return f;
}

Flux hll_with_speeds(const Side& L, const Side& R, double sl, double sr) {
  if (sl >= 0.0) return L.flux();
  if (sr <= 0.0) return R.flux();
  return (sr * L.flux() - sl * R.flux() + sl * sr * (R.conserved() - L.conserved())) / (sr - sl);
}

Flux hll(const Side& L, const Side& R) {
  const double sl = std::min(L.u - L.a, R.u - R.a);
  const double sr = std::max(L.u + L.a, R.u + R.a);
  return hll_with_speeds(L, R, sl, sr);
}

Eigen::Vector4d hllc_star(const Side& K, double sk, double sm) {
  const double factor = K.rho * (sk - K.u) / (sk - sm);
  return factor * Eigen::Vector4d(1.0, sm, K.v, K.E / K.rho + (sm - K.u) * (sm + K.p / (K.rho * (sk - K.u))));
}

Flux hllc(const Side& L, const Side& R) {
  const double sl = std::min(L.u - L.a, R.u - R.a);
  const double sr = std::max(L.u + L.a, R.u + R.a);
  if (sl >= 0.0) return L.flux();
  if (sr <= 0.0) return R.flux();
  const double ml = L.rho * (sl - L.u);
  const double mr = R.rho * (sr - R.u);
  const double sm = (R.p - L.p + ml * L.u - mr * R.u) / (ml - mr);
  if (sm >= 0.0) return L.flux() + sl * (hllc_star(L, sl, sm) - L.conserved());
  return R.flux() + sr * (hllc_star(R, sr, sm) - R.conserved());
}

Flux van_leer_split(const Side& s, double sign, const GasModel& gas) {
  const double mach = s.u / s.a;
  if (mach * sign >= 1.0) return s.flux();
  if (mach * sign <= -1.0) return Flux::Zero();
  const double g = gas.gamma;
  const double mass = sign * 0.25 * s.rho * s.a * (mach + sign) * (mach + sign);
  const double un = ((g - 1.0) * s.u + sign * 2.0 * s.a);
  return mass * Flux(1.0, un / g, s.v, un * un / (2.0 * (g * g - 1.0)) + 0.5 * s.v * s.v);
}

Flux van_leer(const Side& L, const Side& R, const GasModel& gas) {
  return van_leer_split(L, 1.0, gas) + van_leer_split(R, -1.0, gas);
}

double ausm_mach_split(double m, double sign) {
  constexpr double beta = 1.0 / 8.0;
  if (std::abs(m) >= 1.0) return 0.5 * (m + sign * std::abs(m));
  const double q = m * m - 1.0;
  return sign * (0.25 * (m + sign) * (m + sign) + beta * q * q);
}

double ausm_pressure_split(double m, double sign) {
  constexpr double alpha = 3.0 / 16.0;
  if (std::abs(m) >= 1.0) return m * sign > 0.0 ? 1.0 : 0.0;
  const double q = m * m - 1.0;
  return 0.25 * (m + sign) * (m + sign) * (2.0 - sign * m) + sign * alpha * m * q * q;
}

Flux ausm_plus(const Side& L, const Side& R, const GasModel& gas) {
  const double g = gas.gamma;
  const double crit_l = std::sqrt(2.0 * (g - 1.0) / (g + 1.0) * L.H);
  const double crit_r = std::sqrt(2.0 * (g - 1.0) / (g + 1.0) * R.H);
  const double al = crit_l * crit_l / std::max(crit_l, L.u);
  const double ar = crit_r * crit_r / std::max(crit_r, -R.u);
  const double a_face = std::min(al, ar);
  const double ml = L.u / a_face;
  const double mr = R.u / a_face;
  const double m_face = ausm_mach_split(ml, 1.0) + ausm_mach_split(mr, -1.0);
  const double p_face = ausm_pressure_split(ml, 1.0) * L.p + ausm_pressure_split(mr, -1.0) * R.p;
  const Eigen::Vector4d phi_l(L.rho, L.rho * L.u, L.rho * L.v, L.rho * L.H);
  const Eigen::Vector4d phi_r(R.rho, R.rho * R.u, R.rho * R.v, R.rho * R.H);
  Flux f = a_face * (0.5 * (m_face + std::abs(m_face)) * phi_l + 0.5 * (m_face - std::abs(m_face)) * phi_r);
  f[1] += p_face;
  return f;
}

double slau_pressure_split(double m, double sign) {
  if (std::abs(m) >= 1.0) return 0.5 * (1.0 + sign * (m > 0.0 ? 1.0 : -1.0));
  return 0.25 * (m + sign) * (m + sign) * (2.0 - sign * m);
}

Flux slau(const Side& L, const Side& R) {
  const double c = 0.5 * (L.a + R.a);
  const double ml = L.u / c;
  const double mr = R.u / c;
  const double speed = std::sqrt(0.5 * (L.u * L.u + L.v * L.v + R.u * R.u + R.v * R.v));
  const double m_hat = std::min(1.0, speed / c);
  const double chi = (1.0 - m_hat) * (1.0 - m_hat);
  const double g = -std::max(std::min(ml, 0.0), -1.0) * std::min(std::max(mr, 0.0), 1.0);
  const double vn_bar = (L.rho * std::abs(L.u) + R.rho * std::abs(R.u)) / (L.rho + R.rho);
  const double vn_plus = (1.0 - g) * vn_bar + g * std::abs(L.u);
  const double vn_minus = (1.0 - g) * vn_bar + g * std::abs(R.u);
  const double mdot =
      0.5 * (L.rho * (L.u + vn_plus) + R.rho * (R.u - vn_minus) - chi / c * (R.p - L.p));
  const double bl = slau_pressure_split(ml, 1.0);
  const double br = slau_pressure_split(mr, -1.0);
  const double p_mean = 0.5 * (L.p + R.p);
  const double p_face = p_mean + 0.5 * (bl - br) * (L.p - R.p) + (1.0 - chi) * (bl + br - 1.0) * p_mean;
  const Eigen::Vector4d psi_l(1.0, L.u, L.v, L.H);
  const Eigen::Vector4d psi_r(1.0, R.u, R.v, R.H);
  Flux f = 0.5 * (mdot + std::abs(mdot)) * psi_l + 0.5 * (mdot - std::abs(mdot)) * psi_r;
  f[1] += p_face;
  return f;
}

struct EinfeldtSpeeds {
  double lower, upper;
};

EinfeldtSpeeds einfeldt_speeds(const Side& L, const Side& R, const RoeAverage& m) {
  const double sl = std::min(L.u - L.a, m.u - m.a);
  const double sr = std::max(R.u + R.a, m.u + m.a);
  return {std::min(sl, 0.0), std::max(sr, 0.0)};
}

Flux hlle_with(const Side& L, const Side& R, const EinfeldtSpeeds& s) {
  return (s.upper * L.flux() - s.lower * R.flux() + s.upper * s.lower * (R.conserved() - L.conserved())) /
         (s.upper - s.lower);
}

Flux hlle(const Side& L, const Side& R, const GasModel& gas) {
  const RoeAverage m = roe_average(L, R, gas);
  return hlle_with(L, R, einfeldt_speeds(L, R, m));
}

Flux hllem(const Side& L, const Side& R, const GasModel& gas) {
  const RoeAverage m = roe_average(L, R, gas);
  const EinfeldtSpeeds s = einfeldt_speeds(L, R, m);
  const RoeWaves w = roe_waves(L, R, m);
  const double delta = m.a / (m.a + std::abs(m.u));
  const Eigen::Vector4d linear_waves = w.alpha[1] * w.r[1] + w.alpha[2] * w.r[2];
  return hlle_with(L, R, s) - s.upper * s.lower / (s.upper - s.lower) * delta * linear_waves;
}

void check_input(const State& U, const GasModel& gas, const char* side) {
  if (!U.allFinite()) {
    throw Error(Module::numerics, std::string("non-finite ") + side + " state passed to Riemann solver");
  }
  if (!is_physical(U, gas)) {
    std::ostringstream os;
    os << "non-physical " << side << " state passed to Riemann solver (rho=" << U[0]
       << ", p=" << pressure(U, gas) << ")";
    throw Error(Module::numerics, os.str());
  }
}

}  // namespace

Flux physical_flux(const State& U, double nx, double ny, const GasModel& gas) {
  const double rho = U[0];
  const double u = U[1] / rho;
  const double v = U[2] / rho;
  const double p = pressure(U, gas);
  const double q = u * nx + v * ny;
  return {rho * q, U[1] * q + p * nx, U[2] * q + p * ny, (U[3] + p) * q};
}

Flux riemann_flux(RiemannSolver solver, const State& UL, const State& UR, double nx, double ny,
                  const GasModel& gas, const SolverOptions& options) {
  check_input(UL, gas, "left");
  check_input(UR, gas, "right");
  const Side L = to_face_frame(UL, nx, ny, gas);
  const Side R = to_face_frame(UR, nx, ny, gas);
  Flux f = Flux::Zero();
  switch (solver) {
    case RiemannSolver::roe: f = roe(L, R, gas, options); break;
    case RiemannSolver::hllc: f = hllc(L, R); break;
    case RiemannSolver::hll: f = hll(L, R); break;
    case RiemannSolver::van_leer: f = van_leer(L, R, gas); break;
    case RiemannSolver::ausm_plus: f = ausm_plus(L, R, gas); break;
    case RiemannSolver::slau: f = slau(L, R); break;
    case RiemannSolver::hlle: f = hlle(L, R, gas); break;
    case RiemannSolver::hllem: f = hllem(L, R, gas); break;
  }
  return from_face_frame(f, nx, ny);
}

}  // namespace shockstab
