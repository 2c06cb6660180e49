#pragma once

#include <optional>
#include <vector>

#include "qmt/evolve/time_grid.hpp"
#include "qmt/models/ising.hpp"
#include "qmt/opcore/pauli.hpp"

namespace qmt::lightcone {

using opcore::Pauli;

struct ConeOptions {
  /// Observable A_i on the source site.
  Pauli source_op = Pauli::Z;
  /// Worker threads sharing the time grid; results do not depend on it.
  std::size_t workers = 1;
  std::size_t max_sites = 12;
  std::size_t max_times = 100'000;
};

/// C_j(t) = ||[U(t)^dagger A_j U(t), A_i]|| with single-site Paulis, on the
/// open transverse-field Ising chain.
struct ConeScan {
  models::IsingParams params;
  std::size_t source = 0;
  Pauli source_op = Pauli::Z;
  Pauli probe = Pauli::Z;
  double dt = 0.0;
  std::vector<double> times;
  /// n_sites x times.size().
  Eigen::MatrixXd norms;

  std::size_t n_sites() const noexcept { return static_cast<std::size_t>(norms.rows()); }
  /// |j - source| in lattice units.
  double distance(std::size_t site) const noexcept;
};

/// Exact-diagonalization scan. Throws std::invalid_argument for n above
/// options.max_sites, an invalid source or an identity probe, and
/// std::length_error past options.max_times grid points.
ConeScan cone_scan(const models::IsingParams& p, std::size_t source, Pauli probe, const evolve::TimeGrid& grid,
                   const ConeOptions& options = {});

struct MonotonicityViolation {
  std::size_t nearer = 0;
  std::size_t farther = 0;
  /// How many grid steps the farther site beat the nearer one by; infinite
  /// when only the farther site was reached.
  double steps = 0.0;
};

struct ArrivalTable {
  double eps = 0.1;
  std::size_t source = 0;
  double dt = 0.0;
  std::vector<double> distance;
  /// First grid time with C_j >= eps; the source is 0 by convention and
  /// unset entries were never reached on the grid.
  std::vector<std::optional<double>> arrival;
  std::vector<MonotonicityViolation> violations;

  std::size_t reached() const noexcept;
  double max_violation_steps() const noexcept;
};

/// Throws std::invalid_argument unless 0 < eps < 2.
ArrivalTable arrival_times(const ConeScan& scan, double eps = 0.1);

/// Pairs (nearer, farther) on the same side of the source where the farther
/// site arrives strictly earlier. dt scales the reported step counts.
std::vector<MonotonicityViolation> monotonicity_violations(const ArrivalTable& table);

struct VelocityFit {
  /// Sites per engine time unit.
  double velocity = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;
  /// residual_norm / ||distances||.
  double relative_residual = 0.0;
  std::size_t points = 0;
  /// velocity * lattice_spacing, in metres per engine time unit.
  std::optional<double> velocity_si;
};

/// Least squares distance = v t* + b over reached sites (source included).
/// Throws std::invalid_argument with fewer than 3 reached sites or a
/// degenerate time set.
VelocityFit fit_velocity(const ArrivalTable& arrivals, std::optional<double> lattice_spacing = std::nullopt);

struct EnvelopeReport {
  bool holds = true;
  std::size_t violations = 0;
  /// Largest C_j(t) - bound over the grid and where it happens.
  double worst_excess = 0.0;
  std::size_t worst_site = 0;
  double worst_time = 0.0;
};

/// Checks C_j(t) <= c exp(-a (d_j - v t)) at every grid cell, with 1e-12
/// absolute slack for rounding. Throws std::invalid_argument unless c, a, v > 0.
EnvelopeReport envelope_check(const ConeScan& scan, double c, double a, double v);

}  // namespace qmt::lightcone
