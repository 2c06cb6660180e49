#pragma once

#include <optional>
#include <vector>

#include "qmt/opcore/operator.hpp"

namespace qmt::models {

using opcore::HilbertGeometry;
using opcore::Operator;

/// Open transverse-field Ising chain H = h sum_i Z_i + g sum_{i<N-1} X_i X_{i+1}.
/// Engine units: hbar = 1, energies in units set by h and g.
struct IsingParams {
  std::size_t n = 2;
  double h = 1.0;
  double g = 1.0;

  void validate() const;
};

/// External ancilla spin coupled to one chain site: h_A Z_A + g_A X_attach X_A.
struct AncillaCoupling {
  double h_a = 0.0;
  double g_a = 0.0;
  /// Chain site carrying the coupling; the last chain site when unset.
  std::optional<std::size_t> attach_site;
};

Operator build_ising(const IsingParams& p, std::size_t max_dim = opcore::kDefaultMaxDim);

/// Two-qubit system-ancilla Hamiltonian (g/2)[|0><0| (x) 1 + |1><1| (x) (1 + X)].
/// Throws std::invalid_argument for g <= 0.
Operator build_binary_measurement_hamiltonian(double g);

/// Chain of p.n sites plus the ancilla as site p.n.
Operator build_ising_with_ancilla(const IsingParams& p, const AncillaCoupling& a,
                                  std::size_t max_dim = opcore::kDefaultMaxDim);

/// The ancilla-only part of build_ising_with_ancilla (the controllable terms).
Operator build_ancilla_terms(const IsingParams& p, const AncillaCoupling& a,
                             std::size_t max_dim = opcore::kDefaultMaxDim);

/// Basis indices with even and odd numbers of 1 digits. Ising chains, with
/// or without the ancilla, conserve this parity.
std::vector<std::vector<std::size_t>> parity_sectors(const HilbertGeometry& geometry);

}  // namespace qmt::models
