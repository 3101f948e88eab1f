#include "shockstab/limiter.hpp"

#include <algorithm>
#include <cmath>

namespace shockstab {

std::string_view to_string(Limiter limiter) {
  switch (limiter) {
    case Limiter::superbee: return "superbee";
    case Limiter::van_leer: return "van_leer";
    case Limiter::van_albada: return "van_albada";
    case Limiter::minmod: return "minmod";
    case Limiter::deng: return "deng";
  }
  return "unknown";
}

std::optional<Limiter> parse_limiter(std::string_view name) {
  for (Limiter l : {Limiter::superbee, Limiter::van_leer, Limiter::van_albada, Limiter::minmod, Limiter::deng}) {
    if (to_string(l) == name) return l;
  }
  return std::nullopt;
}

double round_normalized(double u_hat, const RoundParams& params) {
  if (!(u_hat > 0.0) || u_hat > 1.0) return u_hat;
  const double d = u_hat - 0.5;
  const double d4 = d * d * d * d;
  const double third_order = 1.0 / 3.0 + 5.0 / 6.0 * u_hat;
  if (u_hat <= 0.5) {
    const double w0 = 1.0 / std::pow(1.0 + params.gamma0 * d4, 2);
    return std::min(third_order * w0 + 2.0 * u_hat * (1.0 - w0), 2.0 * u_hat);
  }
  const double w1 = 1.0 / std::pow(1.0 + params.gamma1 * d4, 2);
  const double bound = params.lambda1 * u_hat - params.lambda1 + 1.0;
  return std::min(third_order * w1 + bound * (1.0 - w1), bound);
}

double limiter_value(Limiter limiter, double r, const RoundParams& round) {
  if (!(r > 0.0)) return 0.0;
  switch (limiter) {
    case Limiter::superbee:
      return std::max({0.0, std::min(2.0 * r, 1.0), std::min(r, 2.0)});
    case Limiter::van_leer:
      return 2.0 * r / (1.0 + r);
    case Limiter::van_albada:
      // (r^2 + r) / (r^2 + 1), rearranged so large r does not overflow.
      if (r > 1.0) return (1.0 + 1.0 / r) / (1.0 + 1.0 / (r * r));
      return (r * r + r) / (r * r + 1.0);
    case Limiter::minmod:
      return std::min(r, 1.0);
    case Limiter::deng: {
      // MUSCL form of the normalised-variable map: u_f = u + psi/2 * u with
      // u = 1 / (1 + r).
      const double u_hat = 1.0 / (1.0 + r);
      return 2.0 * (round_normalized(u_hat, round) - u_hat) / u_hat;
    }
  }
  return 0.0;
}

}  // namespace shockstab
