#include "qmt/speedlimit/physical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qmt::speedlimit {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

}  // namespace

double coulomb_energy(const CoulombCoupling& c) {
  require_positive(c.r_sa, "coulomb_energy: r_SA");
  return PhysicalConstants::k_e * c.q_s * c.q_a / c.r_sa;
}

double energetic_velocity(double q_s, double q_a) {
  if (!(q_s * q_a > 0.0) || !std::isfinite(q_s * q_a)) {
    throw std::invalid_argument("energetic_velocity: charge product must be positive");
  }
  return PhysicalConstants::k_e * q_s * q_a / (PhysicalConstants::hbar * std::numbers::pi);
}

double coulomb_min_time(const CoulombCoupling& c) {
  return PhysicalConstants::hbar * std::numbers::pi / coulomb_energy(c);
}

double min_measurement_time(double d, double v) {
  require_positive(d, "min_measurement_time: d");
  require_positive(v, "min_measurement_time: v");
  return d / v;
}

double thermal_wavelength(const ThermalParams& t) {
  require_positive(t.mass, "thermal_wavelength: mass");
  require_positive(t.temperature, "thermal_wavelength: temperature");
  return PhysicalConstants::h / std::sqrt(t.mass * PhysicalConstants::k_B * t.temperature);
}

bool is_macroscopic(double d, const ThermalParams& t, double factor) {
  require_positive(d, "is_macroscopic: d");
  return d > factor * thermal_wavelength(t);
}

}  // namespace qmt::speedlimit
