#pragma once

#include <string_view>

#include "qmt/opcore/operator.hpp"

namespace qmt::opcore {

/// Pure state with unit Euclidean norm (within kStateTol).
class StateVector {
 public:
  StateVector(HilbertGeometry geometry, Vector amplitudes);

  /// Rescales to unit norm; throws InvalidState for a zero vector.
  static StateVector normalized(HilbertGeometry geometry, Vector amplitudes);
  static StateVector basis(HilbertGeometry geometry, std::size_t index);
  /// Basis state from per-site digits, site 0 first: "10" is |1>|0>.
  static StateVector from_label(HilbertGeometry geometry, std::string_view digits);

  const HilbertGeometry& geometry() const noexcept { return geometry_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }

  /// <this|other>
  cplx inner(const StateVector& other) const;
  StateVector tensor(const StateVector& right) const;

 private:
  HilbertGeometry geometry_;
  Vector amplitudes_;
};

/// Mixed state: Hermitian, unit trace, positive semidefinite.
///
/// Validation tolerances are kHermitianTol for Hermiticity, kStateTol for the
/// trace, and -kStateTol for the smallest eigenvalue.
class DensityMatrix {
 public:
  DensityMatrix(HilbertGeometry geometry, DenseMatrix entries);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(const HilbertGeometry& geometry);

  const HilbertGeometry& geometry() const noexcept { return geometry_; }
  const DenseMatrix& matrix() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }
  Operator as_operator() const { return Operator(geometry_, entries_); }

  double purity() const;
  Eigen::VectorXd eigenvalues() const;

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, HilbertGeometry geometry, DenseMatrix entries);

  HilbertGeometry geometry_;
  DenseMatrix entries_;
};

/// Trace norm of the difference, ||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// min over global phase of ||a - e^{i phi} b||_2, phase fixed by aligning
/// the largest-magnitude component of b.
double phase_aligned_distance(const StateVector& a, const StateVector& b);

}  // namespace qmt::opcore
