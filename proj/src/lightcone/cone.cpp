#include "qmt/lightcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qmt/errors.hpp"
#include "qmt/evolve/propagator.hpp"
#include "qmt/opcore/norms.hpp"

namespace qmt::lightcone {
namespace {

using opcore::cplx;
using opcore::DenseMatrix;

/// Local unitary R with R Z R^dagger equal to the probe Pauli.
Eigen::Matrix2cd rotation_to(Pauli p) {
  const double s = std::numbers::sqrt2 / 2.0;
  Eigen::Matrix2cd hadamard;
  hadamard << s, s, s, -s;
  switch (p) {
    case Pauli::X:
      return hadamard;
    case Pauli::Y: {
      Eigen::Matrix2cd phase = Eigen::Matrix2cd::Identity();
      phase(1, 1) = cplx{0.0, 1.0};
      return phase * hadamard;
    }
    default:
      return Eigen::Matrix2cd::Identity();
  }
}

/// b <- (R^dagger on site) b (R on site), for a site with the given stride.
void conjugate_site(DenseMatrix& b, const Eigen::Matrix2cd& r, Eigen::Index stride) {
  const Eigen::Matrix2cd rd = r.adjoint();
  const Eigen::Index dim = b.rows();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      const Eigen::RowVectorXcd r0 = b.row(k);
      const Eigen::RowVectorXcd r1 = b.row(k + stride);
      b.row(k) = rd(0, 0) * r0 + rd(0, 1) * r1;
      b.row(k + stride) = rd(1, 0) * r0 + rd(1, 1) * r1;
    }
  }
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      const Eigen::VectorXcd c0 = b.col(k);
      const Eigen::VectorXcd c1 = b.col(k + stride);
      b.col(k) = c0 * r(0, 0) + c1 * r(1, 0);
      b.col(k + stride) = c0 * r(0, 1) + c1 * r(1, 1);
    }
  }
}

double block_norm(const DenseMatrix& block) {
  try {
    return opcore::largest_singular_value(block);
  } catch (const ConvergenceFailure&) {
    return opcore::spectral_norm_dense(block);
  }
}

}  // namespace

double ConeScan::distance(std::size_t site) const noexcept {
  return site > source ? static_cast<double>(site - source) : static_cast<double>(source - site);
}

ConeScan cone_scan(const models::IsingParams& p, std::size_t source, Pauli probe, const evolve::TimeGrid& grid,
                   const ConeOptions& options) {
  p.validate();
  if (p.n > options.max_sites) {
    throw std::invalid_argument("cone_scan: exact evolution is limited to " + std::to_string(options.max_sites) +
                                " sites");
  }
  if (source >= p.n) throw std::invalid_argument("cone_scan: source site out of range");
  if (probe == Pauli::I || options.source_op == Pauli::I) {
    throw std::invalid_argument("cone_scan: identity observables commute with everything");
  }
  if (grid.size() > options.max_times) {
    throw std::length_error("cone_scan: " + std::to_string(grid.size()) + " grid points exceed the cap of " +
                            std::to_string(options.max_times));
  }

  const opcore::Operator h = models::build_ising(p);
  const auto& geometry = h.geometry();
  const evolve::Propagator prop(h, models::parity_sectors(geometry));
  const evolve::ObservableTrack track =
      prop.track(opcore::materialize_pauli_string(opcore::PauliString::single(geometry, source, options.source_op)));

  ConeScan scan{p, source, options.source_op, probe, grid.dt(), grid.points(),
                Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p.n), static_cast<Eigen::Index>(grid.size()))};
  const Eigen::Matrix2cd rot = rotation_to(probe);
  const auto dim = static_cast<Eigen::Index>(geometry.dim());

  // Index lists for the bit-0 rows and bit-1 columns of each site.
  std::vector<std::vector<Eigen::Index>> zeros(p.n);
  std::vector<std::vector<Eigen::Index>> ones(p.n);
  for (std::size_t j = 0; j < p.n; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      (geometry.digit(static_cast<std::size_t>(i), j) == 0 ? zeros[j] : ones[j]).push_back(i);
    }
  }

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < scan.times.size(); k += stride) {
      // [U^dagger A_j U, A_i] has the norm of [A_j, U A_i U^dagger].
      const DenseMatrix b = track.at(-scan.times[k]);
      for (std::size_t j = 0; j < p.n; ++j) {
        // [Z_j, B] is 2 B on (bit 0, bit 1) and -2 B on the transposed block.
        DenseMatrix off;
        if (probe == Pauli::Z) {
          off = b(zeros[j], ones[j]);
        } else {
          DenseMatrix bj = b;
          conjugate_site(bj, rot, static_cast<Eigen::Index>(geometry.stride(j)));
          off = bj(zeros[j], ones[j]);
        }
        scan.norms(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = 2.0 * block_norm(off);
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, scan.times.size()));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  return scan;
}

std::size_t ArrivalTable::reached() const noexcept {
  return static_cast<std::size_t>(std::count_if(arrival.begin(), arrival.end(), [](const auto& a) { return a.has_value(); }));
}

double ArrivalTable::max_violation_steps() const noexcept {
  double worst = 0.0;
  for (const auto& v : violations) worst = std::max(worst, v.steps);
  return worst;
}

std::vector<MonotonicityViolation> monotonicity_violations(const ArrivalTable& table) {
  std::vector<MonotonicityViolation> out;
  const std::size_t n = table.arrival.size();
  auto same_side = [&](std::size_t a, std::size_t b) {
    return (a <= table.source && b <= table.source) || (a >= table.source && b >= table.source);
  };
  for (std::size_t near = 0; near < n; ++near) {
    for (std::size_t far = 0; far < n; ++far) {
      if (!same_side(near, far) || !(table.distance[near] < table.distance[far])) continue;
      const auto& tn = table.arrival[near];
      const auto& tf = table.arrival[far];
      if (!tf) continue;
      if (!tn) {
        out.push_back({near, far, std::numeric_limits<double>::infinity()});
      } else if (*tf < *tn) {
        const double steps = table.dt > 0.0 ? std::round((*tn - *tf) / table.dt) : *tn - *tf;
        out.push_back({near, far, steps});
      }
    }
  }
  return out;
}

ArrivalTable arrival_times(const ConeScan& scan, double eps) {
  if (!(eps > 0.0 && eps < 2.0)) throw std::invalid_argument("arrival_times: eps must lie in (0, 2)");
  ArrivalTable table;
  table.eps = eps;
  table.source = scan.source;
  table.dt = scan.dt;
  for (std::size_t j = 0; j < scan.n_sites(); ++j) {
    table.distance.push_back(scan.distance(j));
    std::optional<double> t;
    if (j == scan.source) {
      t = 0.0;
    } else {
      for (std::size_t k = 0; k < scan.times.size(); ++k) {
        if (scan.norms(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) >= eps) {
          t = scan.times[k];
          break;
        }
      }
    }
    table.arrival.push_back(t);
  }
  table.violations = monotonicity_violations(table);
  return table;
}

VelocityFit fit_velocity(const ArrivalTable& arrivals, std::optional<double> lattice_spacing) {
  std::vector<double> t;
  std::vector<double> d;
  for (std::size_t j = 0; j < arrivals.arrival.size(); ++j) {
    if (!arrivals.arrival[j]) continue;
    t.push_back(*arrivals.arrival[j]);
    d.push_back(arrivals.distance.at(j));
  }
  if (t.size() < 3) {
    throw std::invalid_argument("fit_velocity: need at least 3 reached sites, have " + std::to_string(t.size()));
  }
  const auto n = static_cast<double>(t.size());
  double mt = 0.0, md = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) { mt += t[k]; md += d[k]; }
  mt /= n;
  md /= n;
  double stt = 0.0, std_ = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    stt += (t[k] - mt) * (t[k] - mt);
    std_ += (t[k] - mt) * (d[k] - md);
  }
  if (!(stt > 0.0)) throw std::invalid_argument("fit_velocity: all arrival times coincide");

  VelocityFit fit;
  fit.velocity = std_ / stt;
  fit.intercept = md - fit.velocity * mt;
  double rr = 0.0, dd = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double r = d[k] - (fit.velocity * t[k] + fit.intercept);
    rr += r * r;
    dd += d[k] * d[k];
  }
  fit.residual_norm = std::sqrt(rr);
  fit.relative_residual = dd > 0.0 ? fit.residual_norm / std::sqrt(dd) : 0.0;
  fit.points = t.size();
  if (lattice_spacing) {
    if (!(*lattice_spacing > 0.0)) throw std::invalid_argument("fit_velocity: lattice spacing must be positive");
    fit.velocity_si = fit.velocity * *lattice_spacing;
  }
  return fit;
}

EnvelopeReport envelope_check(const ConeScan& scan, double c, double a, double v) {
  if (!(c > 0.0 && a > 0.0 && v > 0.0)) throw std::invalid_argument("envelope_check: c, a, v must be positive");
  EnvelopeReport report;
  report.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < scan.n_sites(); ++j) {
    const double d = scan.distance(j);
    for (std::size_t k = 0; k < scan.times.size(); ++k) {
      const double bound = c * std::exp(-a * (d - v * scan.times[k]));
      const double excess = scan.norms(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) - bound;
      if (excess > 1e-12) {
        report.holds = false;
        ++report.violations;
      }
      if (excess > report.worst_excess) {
        report.worst_excess = excess;
        report.worst_site = j;
        report.worst_time = scan.times[k];
      }
    }
  }
  return report;
}

}  // namespace qmt::lightcone
