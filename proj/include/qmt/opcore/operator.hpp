#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <variant>

#include "qmt/opcore/geometry.hpp"

namespace qmt::opcore {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateTol = 1e-10;

enum class Storage { dense, sparse };

/// Storage policy: sparse below 5% fill, or below 25% fill once dim > 2^10.
Storage preferred_storage(Eigen::Index nonzeros, Eigen::Index dim) noexcept;

/// Square complex matrix on a HilbertGeometry.
///
/// Immutable once built. The storage (dense or sparse) is picked by fill and
/// never changes results; accessors convert on demand. The Hermitian flag is
/// computed at construction against kHermitianTol, scaled by the largest
/// entry magnitude when that exceeds one.
class Operator {
 public:
  Operator(HilbertGeometry geometry, DenseMatrix entries);
  Operator(HilbertGeometry geometry, SparseMatrix entries);

  static Operator identity(const HilbertGeometry& geometry);
  static Operator zero(const HilbertGeometry& geometry);

  const HilbertGeometry& geometry() const noexcept { return geometry_; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(geometry_.dim()); }
  Storage storage() const noexcept;
  bool is_hermitian() const noexcept { return hermitian_; }
  double fill() const noexcept;
  Eigen::Index nonzeros() const noexcept;

  /// Dense copy of the entries.
  DenseMatrix dense() const;
  SparseMatrix sparse() const;
  const DenseMatrix* dense_view() const noexcept { return std::get_if<DenseMatrix>(&entries_); }
  const SparseMatrix* sparse_view() const noexcept { return std::get_if<SparseMatrix>(&entries_); }

  cplx coeff(Eigen::Index row, Eigen::Index col) const;
  Vector apply(const Vector& v) const;
  Operator adjoint() const;

  /// Largest |entry|.
  double max_abs() const noexcept;
  /// True when every imaginary part is exactly zero.
  bool is_real() const noexcept;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(cplx s, const Operator& a);
  friend Operator operator*(const Operator& a, cplx s) { return s * a; }

 private:
  void check_shape(Eigen::Index rows, Eigen::Index cols) const;
  void settle_storage();
  void compute_hermitian_flag();

  HilbertGeometry geometry_;
  std::variant<DenseMatrix, SparseMatrix> entries_;
  bool hermitian_ = false;
};

/// max |a_ij - b_ij|.
double max_abs_difference(const Operator& a, const Operator& b);

}  // namespace qmt::opcore
