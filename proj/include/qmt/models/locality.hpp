#pragma once

#include <optional>
#include <vector>

#include "qmt/models/ising.hpp"

namespace qmt::models {

/// Local Hamiltonian H_i of one volume, embedded in the full space.
struct LocalTerm {
  std::vector<std::size_t> support;
  Operator op;
};

/// Pair interaction J_ij between volumes i and j at distance d_ij. For
/// extended volumes d_ij is the minimal distance between them.
struct PairCoupling {
  std::size_t i = 0;
  std::size_t j = 0;
  Operator op;
  double distance = 1.0;
};

/// H = sum_i H_i + sum_{i<j} J_ij over a partition of the sites into volumes.
struct LocalHamiltonianSpec {
  HilbertGeometry geometry;
  std::vector<LocalTerm> volumes;
  std::vector<PairCoupling> couplings;

  /// Throws std::invalid_argument on overlapping supports, self-couplings,
  /// unknown volumes, non-positive distances, or foreign geometries.
  void validate() const;
  Operator total() const;
};

struct PairLocality {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
  double norm_i = 0.0;  ///< ||[H_i, J_ij]||
  double norm_j = 0.0;  ///< ||[H_j, J_ij]||
};

struct LocalityReport {
  std::vector<PairLocality> pairs;
  /// Volumes with no coupling that fails to commute with their local term.
  std::vector<std::size_t> isolated_volumes;
  bool connected = false;
  /// Slope of log ||[H_i, J_ij]|| against log d_ij over nonzero pairs; unset
  /// with fewer than two distinct distances.
  std::optional<double> decay_exponent;
};

LocalityReport locality_report(const LocalHamiltonianSpec& spec);

/// Ising chain as single-site volumes with couplings listed for every pair
/// i < j; pairs beyond nearest neighbours carry the zero operator.
LocalHamiltonianSpec ising_locality_spec(const IsingParams& p);

/// Line of single-qubit volumes with H_i = Z_i and J_ij = |i-j|^exponent X_i X_j.
LocalHamiltonianSpec power_law_line_spec(std::size_t volumes, double exponent);

}  // namespace qmt::models
