#include "qmt/opcore/operator.hpp"

#include <algorithm>

#include "qmt/errors.hpp"

namespace qmt::opcore {

Storage preferred_storage(Eigen::Index nonzeros, Eigen::Index dim) noexcept {
  const double fill = static_cast<double>(nonzeros) / (static_cast<double>(dim) * dim);
  if (fill < 0.05) return Storage::sparse;
  if (dim > (Eigen::Index{1} << 10) && fill < 0.25) return Storage::sparse;
  return Storage::dense;
}

Operator::Operator(HilbertGeometry geometry, DenseMatrix entries)
    : geometry_(std::move(geometry)), entries_(std::move(entries)) {
  const auto& m = std::get<DenseMatrix>(entries_);
  check_shape(m.rows(), m.cols());
  settle_storage();
  compute_hermitian_flag();
}

Operator::Operator(HilbertGeometry geometry, SparseMatrix entries)
    : geometry_(std::move(geometry)), entries_(std::move(entries)) {
  auto& m = std::get<SparseMatrix>(entries_);
  check_shape(m.rows(), m.cols());
  m.prune(cplx{0.0, 0.0}, 0.0);
  m.makeCompressed();
  settle_storage();
  compute_hermitian_flag();
}

Operator Operator::identity(const HilbertGeometry& geometry) {
  const auto d = static_cast<Eigen::Index>(geometry.dim());
  SparseMatrix id(d, d);
  id.setIdentity();
  return Operator(geometry, std::move(id));
}

Operator Operator::zero(const HilbertGeometry& geometry) {
  const auto d = static_cast<Eigen::Index>(geometry.dim());
  return Operator(geometry, SparseMatrix(d, d));
}

void Operator::check_shape(Eigen::Index rows, Eigen::Index cols) const {
  if (rows != cols || rows != dim()) {
    throw GeometryMismatch("Operator: matrix is " + std::to_string(rows) + "x" +
                           std::to_string(cols) + " but geometry " + geometry_.describe());
  }
}

void Operator::settle_storage() {
  const Eigen::Index nnz = nonzeros();
  const Storage want = preferred_storage(nnz, dim());
  if (want == storage()) return;
  if (want == Storage::sparse) {
    SparseMatrix s = std::get<DenseMatrix>(entries_).sparseView();
    s.makeCompressed();
    entries_ = std::move(s);
  } else {
    entries_ = DenseMatrix(std::get<SparseMatrix>(entries_));
  }
}

void Operator::compute_hermitian_flag() {
  const double tol = kHermitianTol * std::max(1.0, max_abs());
  if (const auto* d = dense_view()) {
    hermitian_ = (*d - d->adjoint()).cwiseAbs().maxCoeff() <= tol;
  } else {
    const auto& s = *sparse_view();
    SparseMatrix diff = s - SparseMatrix(s.adjoint());
    double worst = 0.0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    hermitian_ = worst <= tol;
  }
}

Storage Operator::storage() const noexcept {
  return std::holds_alternative<DenseMatrix>(entries_) ? Storage::dense : Storage::sparse;
}

Eigen::Index Operator::nonzeros() const noexcept {
  if (const auto* d = dense_view()) {
    return (d->array() != cplx{0.0, 0.0}).count();
  }
  return sparse_view()->nonZeros();
}

double Operator::fill() const noexcept {
  return static_cast<double>(nonzeros()) / (static_cast<double>(dim()) * dim());
}

DenseMatrix Operator::dense() const {
  if (const auto* d = dense_view()) return *d;
  return DenseMatrix(*sparse_view());
}

SparseMatrix Operator::sparse() const {
  if (const auto* s = sparse_view()) return *s;
  SparseMatrix s = dense_view()->sparseView();
  s.makeCompressed();
  return s;
}

cplx Operator::coeff(Eigen::Index row, Eigen::Index col) const {
  if (const auto* d = dense_view()) return (*d)(row, col);
  return sparse_view()->coeff(row, col);
}

Vector Operator::apply(const Vector& v) const {
  if (v.size() != dim()) throw GeometryMismatch("Operator::apply: vector length mismatch");
  if (const auto* d = dense_view()) return *d * v;
  return *sparse_view() * v;
}

Operator Operator::adjoint() const {
  if (const auto* d = dense_view()) return Operator(geometry_, DenseMatrix(d->adjoint()));
  return Operator(geometry_, SparseMatrix(sparse_view()->adjoint()));
}

double Operator::max_abs() const noexcept {
  if (const auto* d = dense_view()) return d->size() ? d->cwiseAbs().maxCoeff() : 0.0;
  double worst = 0.0;
  const auto& s = *sparse_view();
  for (Eigen::Index k = 0; k < s.nonZeros(); ++k) worst = std::max(worst, std::abs(s.valuePtr()[k]));
  return worst;
}

bool Operator::is_real() const noexcept {
  if (const auto* d = dense_view()) return (d->imag().array() == 0.0).all();
  const auto& s = *sparse_view();
  for (Eigen::Index k = 0; k < s.nonZeros(); ++k) {
    if (s.valuePtr()[k].imag() != 0.0) return false;
  }
  return true;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_geometry(a.geometry_, b.geometry_, "operator+");
  if (a.sparse_view() && b.sparse_view()) {
    return Operator(a.geometry_, SparseMatrix(*a.sparse_view() + *b.sparse_view()));
  }
  return Operator(a.geometry_, DenseMatrix(a.dense() + b.dense()));
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_geometry(a.geometry_, b.geometry_, "operator-");
  if (a.sparse_view() && b.sparse_view()) {
    return Operator(a.geometry_, SparseMatrix(*a.sparse_view() - *b.sparse_view()));
  }
  return Operator(a.geometry_, DenseMatrix(a.dense() - b.dense()));
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_geometry(a.geometry_, b.geometry_, "operator*");
  const auto* as = a.sparse_view();
  const auto* bs = b.sparse_view();
  if (as && bs) return Operator(a.geometry_, SparseMatrix(*as * *bs));
  if (as) return Operator(a.geometry_, DenseMatrix(*as * *b.dense_view()));
  if (bs) return Operator(a.geometry_, DenseMatrix(*a.dense_view() * *bs));
  return Operator(a.geometry_, DenseMatrix(*a.dense_view() * *b.dense_view()));
}

Operator operator*(cplx s, const Operator& a) {
  if (const auto* d = a.dense_view()) return Operator(a.geometry_, DenseMatrix(s * *d));
  return Operator(a.geometry_, SparseMatrix(s * *a.sparse_view()));
}

double max_abs_difference(const Operator& a, const Operator& b) {
  return (a - b).max_abs();
}

}  // namespace qmt::opcore
