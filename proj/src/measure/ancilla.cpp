#include "qmt/measure/ancilla.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qmt/errors.hpp"
#include "qmt/evolve/propagator.hpp"
#include "qmt/models/ising.hpp"
#include "qmt/opcore/algebra.hpp"
#include "qmt/opcore/pauli.hpp"

namespace qmt::measure {
namespace {

using opcore::cplx;
using opcore::DenseMatrix;
using opcore::Vector;

void require_z_measurement(const ProjectiveMeasurement& m) {
  const auto z = ProjectiveMeasurement::z_basis();
  bool ok = m.size() == 2 && m.geometry() == z.geometry();
  for (std::size_t r = 0; ok && r < 2; ++r) {
    ok = opcore::max_abs_difference(m[r].projector, z[r].projector) <= 1e-10;
  }
  if (!ok) {
    throw InvalidMeasurement(
        "run_ancilla_protocol: the Hamiltonian mode implements only the single-qubit z-measurement "
        "with outcome 0 = |0><0|");
  }
}

}  // namespace

Operator build_ancilla_unitary(const ProjectiveMeasurement& m, std::size_t ancilla_dim) {
  const std::size_t n = m.size();
  if (ancilla_dim < n) {
    throw std::invalid_argument("build_ancilla_unitary: ancilla dimension " + std::to_string(ancilla_dim) +
                                " is below the " + std::to_string(n) + " outcomes");
  }
  const HilbertGeometry ga({ancilla_dim});
  Operator u = Operator::zero(m.geometry().compose(ga));
  const auto da = static_cast<Eigen::Index>(ancilla_dim);
  for (std::size_t r = 0; r < n; ++r) {
    opcore::SparseMatrix shift(da, da);
    for (std::size_t x = 0; x < ancilla_dim; ++x) {
      const std::size_t to = x < n ? (x + r) % n : x;
      shift.insert(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(x)) = 1.0;
    }
    u = u + opcore::tensor_product(m[r].projector, Operator(ga, std::move(shift)));
  }
  return u;
}

AncillaProtocolResult run_ancilla_protocol(const StateVector& psi, const ProjectiveMeasurement& m,
                                           const ProtocolMode& mode, double duration) {
  opcore::require_same_geometry(psi.geometry(), m.geometry(), "run_ancilla_protocol");
  if (!std::isfinite(duration)) throw std::invalid_argument("run_ancilla_protocol: duration must be finite");
  const std::size_t n = m.size();
  // A single-outcome measurement still gets a qubit register; level 1 stays empty.
  const std::size_t levels = std::max<std::size_t>(n, 2);
  const Operator ideal = build_ancilla_unitary(m, levels);

  Operator applied = ideal;
  double fidelity = 1.0;
  if (const auto* coupling = std::get_if<CouplingHamiltonian>(&mode)) {
    require_z_measurement(m);
    applied = evolve::Propagator(models::build_binary_measurement_hamiltonian(coupling->g)).at(duration);
    fidelity = opcore::hs_fidelity(applied, ideal);
  }

  const HilbertGeometry ga({levels});
  const StateVector ready = StateVector::basis(ga, 0);
  const StateVector start = psi.tensor(ready);
  const StateVector joint(start.geometry(), applied.apply(start.amplitudes()));

  const auto ds = static_cast<Eigen::Index>(psi.dim());
  const auto da = static_cast<Eigen::Index>(levels);
  Vector ideal_amp = Vector::Zero(ds * da);
  for (std::size_t r = 0; r < n; ++r) {
    const Vector branch = m[r].projector.apply(psi.amplitudes());
    for (Eigen::Index s = 0; s < ds; ++s) ideal_amp(s * da + static_cast<Eigen::Index>(r)) = branch(s);
  }
  const StateVector ideal_joint(joint.geometry(), std::move(ideal_amp));

  std::vector<std::size_t> system_sites(psi.geometry().n_sites());
  std::iota(system_sites.begin(), system_sites.end(), std::size_t{0});
  DensityMatrix reduced = opcore::partial_trace(DensityMatrix::from_pure(joint), system_sites);
  DensityMatrix target = dephase(DensityMatrix::from_pure(psi), m);

  std::vector<double> readout(n, 0.0);
  std::vector<std::optional<DensityMatrix>> conditional;
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(n); ++r) {
    Vector branch(ds);
    for (Eigen::Index s = 0; s < ds; ++s) branch(s) = joint.amplitudes()(s * da + r);
    const double p = branch.squaredNorm();
    readout[static_cast<std::size_t>(r)] = p;
    if (p > 1e-14) {
      conditional.emplace_back(DensityMatrix::from_pure(StateVector::normalized(psi.geometry(), branch)));
    } else {
      conditional.emplace_back(std::nullopt);
    }
  }

  AncillaProtocolResult out{joint,
                            ideal_joint,
                            reduced,
                            target,
                            std::move(readout),
                            born_probabilities(DensityMatrix::from_pure(psi), m),
                            std::move(conditional),
                            opcore::trace_distance(reduced, target),
                            fidelity,
                            opcore::phase_aligned_distance(joint, ideal_joint),
                            duration};
  return out;
}

std::vector<std::pair<double, double>> protocol_fidelity_curve(double g, const evolve::TimeGrid& grid) {
  const evolve::Propagator prop(models::build_binary_measurement_hamiltonian(g));
  const Operator ideal = build_ancilla_unitary(ProjectiveMeasurement::z_basis(), 2);
  std::vector<std::pair<double, double>> curve;
  curve.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.at(k);
    curve.emplace_back(t, opcore::hs_fidelity(prop.at(t), ideal));
  }
  return curve;
}

}  // namespace qmt::measure
