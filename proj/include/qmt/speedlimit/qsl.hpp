#pragma once

#include <optional>

#include "qmt/opcore/operator.hpp"
#include "qmt/opcore/state.hpp"

namespace qmt::speedlimit {

/// Speed-limit times in engine units (hbar = 1).
struct QslResult {
  double tau_mt = 0.0;  ///< pi / (2 dH)
  double tau_ml = 0.0;  ///< pi / (2 (<H> - E0))
  /// max(tau_mt, tau_ml); infinite when either term is unreachable.
  double tau_qsl = 0.0;
  double mean_energy = 0.0;
  double energy_spread = 0.0;
  double ground_energy = 0.0;
  /// dH < 1e-14: the state never evolves to an orthogonal one.
  bool mt_unreachable = false;
  /// <H> - E0 < 1e-14.
  bool ml_unreachable = false;

  bool unreachable() const noexcept { return mt_unreachable || ml_unreachable; }
};

inline constexpr double kQslDenominatorTol = 1e-14;

/// Mandelstam-Tamm and Margolus-Levitin times for psi under h. Without e0 the
/// ground energy comes from a dense eigensolver (dim <= 2^12, otherwise
/// std::invalid_argument asks for e0). Throws NotHermitian.
QslResult qsl_time(const opcore::Operator& h, const opcore::StateVector& psi,
                   std::optional<double> e0 = std::nullopt);

}  // namespace qmt::speedlimit
