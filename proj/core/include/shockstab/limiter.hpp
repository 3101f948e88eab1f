#pragma once

#include <optional>
#include <string_view>

namespace shockstab {

enum class Limiter { superbee, van_leer, van_albada, minmod, deng };

std::string_view to_string(Limiter limiter);
std::optional<Limiter> parse_limiter(std::string_view name);

/// Parameters of the normalised-variable (ROUND) reconstruction. The weights
/// are omega_k(u) = (1 + gamma_k (u - 1/2)^4)^-2 of the normalised cell value.
struct RoundParams {
  double gamma0 = 1100.0;
  double gamma1 = 800.0;
  double lambda1 = 0.15;

  bool operator==(const RoundParams&) const = default;
};

/// Normalised face value for a normalised cell value. Identity outside (0, 1].
double round_normalized(double u_hat, const RoundParams& params = {});

/// Slope-limiter function psi(r) with r the ratio of downwind to upwind
/// differences. All limiters return 0 for r <= 0 and 1 at r = 1.
double limiter_value(Limiter limiter, double r, const RoundParams& round = {});

}  // namespace shockstab
