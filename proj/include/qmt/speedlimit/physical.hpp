#pragma once

namespace qmt::speedlimit {

/// SI constants. k_e and e carry the rounded values used for the headline
/// estimates (9e9 N m^2/C^2 and 1.6e-19 C).
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;        // J s
  static constexpr double k_e = 9e9;                    // N m^2 / C^2
  static constexpr double e = 1.6e-19;                  // C
  static constexpr double c = 2.998e8;                  // m / s
  static constexpr double k_B = 1.380649e-23;           // J / K
  static constexpr double h = 6.62607015e-34;           // J s
  static constexpr double hydrogen_mass = 1.67e-27;     // kg
  /// Conventional round information velocity for Coulomb-coupled matter.
  static constexpr double coulomb_velocity = 1e5;       // m / s
};

struct CoulombCoupling {
  double q_s = PhysicalConstants::e;  // C
  double q_a = PhysicalConstants::e;  // C
  double r_sa = 1e-10;               // m
};

struct ThermalParams {
  double mass = PhysicalConstants::hydrogen_mass;  // kg
  double temperature = 300.0;                     // K
};

/// u = k_e q_S q_A / r_SA in joules. Throws std::invalid_argument for r_SA <= 0.
double coulomb_energy(const CoulombCoupling& c);

/// v_E = k_e q_S q_A / (hbar pi) in m/s. Throws std::invalid_argument unless
/// q_S q_A > 0.
double energetic_velocity(double q_s, double q_a);

/// hbar pi / u for the coupling, i.e. r_SA / v_E.
double coulomb_min_time(const CoulombCoupling& c);

/// t_min = d / v in seconds. Throws std::invalid_argument for d <= 0 or v <= 0.
double min_measurement_time(double d, double v);

/// lambda_th = h / sqrt(m k_B T), without the 2 pi of the textbook form.
double thermal_wavelength(const ThermalParams& t);

/// d > factor * lambda_th.
bool is_macroscopic(double d, const ThermalParams& t, double factor = 100.0);

}  // namespace qmt::speedlimit
