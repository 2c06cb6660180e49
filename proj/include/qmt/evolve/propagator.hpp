#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qmt/opcore/operator.hpp"
#include "qmt/opcore/state.hpp"

namespace qmt::evolve {

using opcore::DenseMatrix;
using opcore::Operator;
using opcore::StateVector;

class ObservableTrack;

/// exp(-iHt) from a cached eigendecomposition (hbar = 1).
///
/// An optional partition of the basis into invariant sectors (for example
/// parity sectors of an Ising chain) lets each block be diagonalized on its
/// own. Real Hamiltonians use the real symmetric solver.
class Propagator {
 public:
  /// Throws NotHermitian, or ConvergenceFailure when the eigensolver fails or
  /// V diag(E) V^dagger misses H by more than 1e-9.
  explicit Propagator(const Operator& h);
  /// As above; additionally throws std::invalid_argument when `sectors` is
  /// not a partition of the basis or H couples two sectors.
  Propagator(const Operator& h, std::vector<std::vector<std::size_t>> sectors);

  const Operator& hamiltonian() const noexcept { return h_; }
  const opcore::HilbertGeometry& geometry() const noexcept { return h_.geometry(); }
  std::size_t n_sectors() const noexcept { return blocks_->size(); }

  /// All eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;
  double ground_energy() const;

  /// max |(V diag(E) V^dagger - H)_ij| over all blocks.
  double reconstruction_error() const noexcept { return reconstruction_error_; }

  /// U(t) = exp(-iHt). Any finite t, including negative.
  Operator at(double t) const;
  DenseMatrix dense_at(double t) const;
  StateVector evolve(const StateVector& psi, double t) const;
  /// U(t)^dagger a U(t), the Heisenberg picture a(t).
  Operator heisenberg(const Operator& a, double t) const;

  /// Precomputes a in the eigenbasis so that a(t) is cheap to sample.
  ObservableTrack track(const Operator& a) const;

 private:
  friend class ObservableTrack;
  struct Block {
    std::vector<Eigen::Index> index;
    Eigen::VectorXd energies;
    DenseMatrix vectors;
    std::optional<Eigen::MatrixXd> real_vectors;
  };
  void diagonalize(std::vector<std::vector<std::size_t>> sectors);

  Operator h_;
  std::shared_ptr<const std::vector<Block>> blocks_;
  double reconstruction_error_ = 0.0;
};

/// a(t) = U(t)^dagger a U(t) for one fixed observable, sampled at many times.
class ObservableTrack {
 public:
  const opcore::HilbertGeometry& geometry() const noexcept { return geometry_; }
  /// Dense a(t).
  DenseMatrix at(double t) const;

 private:
  friend class Propagator;
  struct Pair {
    std::size_t a = 0;
    std::size_t b = 0;
    DenseMatrix w;  // V_a^dagger a V_b
  };
  ObservableTrack(std::shared_ptr<const std::vector<Propagator::Block>> blocks, opcore::HilbertGeometry g);

  std::shared_ptr<const std::vector<Propagator::Block>> blocks_;
  opcore::HilbertGeometry geometry_;
  std::vector<Pair> pairs_;
};

}  // namespace qmt::evolve
