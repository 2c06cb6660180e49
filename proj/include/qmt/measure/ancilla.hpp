#pragma once

#include <variant>
#include <vector>

#include "qmt/evolve/time_grid.hpp"
#include "qmt/measure/projective.hpp"

namespace qmt::measure {

using opcore::StateVector;

/// U_SA = sum_r Pi(r) (x) S_r on system (x) ancilla, where S_r shifts the
/// first n ancilla levels cyclically by r (0-based outcome index) and fixes
/// any others. Ancilla level 0 is the ready state. Throws
/// std::invalid_argument when ancilla_dim < m.size().
Operator build_ancilla_unitary(const ProjectiveMeasurement& m, std::size_t ancilla_dim);

/// Apply build_ancilla_unitary directly, in zero engine time.
struct ExactUnitary {};
/// Switch on the two-qubit Hamiltonian (g/2)[|0><0| (x) 1 + |1><1| (x) (1 + X)].
struct CouplingHamiltonian {
  double g = 1.0;
};
using ProtocolMode = std::variant<ExactUnitary, CouplingHamiltonian>;

struct AncillaProtocolResult {
  /// U (psi (x) |0>_A).
  StateVector joint;
  /// Target sum_r (Pi(r) psi) (x) |r>_A.
  StateVector ideal_joint;
  DensityMatrix reduced_system;
  /// sum_r Pi(r) rho Pi(r) for rho = |psi><psi|.
  DensityMatrix dephased_target;
  /// p(ancilla reads r), r = 0 .. m.size() - 1.
  std::vector<double> readout;
  /// Born probabilities of m on psi, for comparison.
  std::vector<double> born;
  /// System state conditioned on each ancilla reading with p > 1e-14.
  std::vector<std::optional<DensityMatrix>> conditional_states;
  /// ||reduced_system - dephased_target||_1.
  double dephasing_distance = 0.0;
  /// |tr(U^dagger U_SA)| / dim of the applied unitary against the ideal one.
  double unitary_fidelity = 1.0;
  /// Phase-aligned distance between joint and ideal_joint.
  double joint_phase_distance = 0.0;
  double duration = 0.0;
};

/// Runs the ancilla-based measurement of m on psi. CouplingHamiltonian mode needs
/// m to be the single-qubit z-measurement (InvalidMeasurement otherwise). A
/// duration other than pi/g shows up as infidelity, never as an error.
AncillaProtocolResult run_ancilla_protocol(const StateVector& psi, const ProjectiveMeasurement& m,
                                           const ProtocolMode& mode, double duration);

/// (t, |tr(U(t)^dagger U_SA)| / 4) for U(t) = exp(-i H_SA t).
std::vector<std::pair<double, double>> protocol_fidelity_curve(double g, const evolve::TimeGrid& grid);

}  // namespace qmt::measure
