#include "qmt/opcore/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qmt/errors.hpp"

namespace qmt::opcore {

StateVector::StateVector(HilbertGeometry geometry, Vector amplitudes)
    : geometry_(std::move(geometry)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != static_cast<Eigen::Index>(geometry_.dim())) {
    throw GeometryMismatch("StateVector: amplitude count does not match geometry " +
                           geometry_.describe());
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateTol) {
    throw InvalidState("StateVector: norm " + std::to_string(norm) + " is not 1");
  }
}

StateVector StateVector::normalized(HilbertGeometry geometry, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidState("StateVector::normalized: zero or non-finite vector");
  }
  return StateVector(std::move(geometry), amplitudes / norm);
}

StateVector StateVector::basis(HilbertGeometry geometry, std::size_t index) {
  if (index >= geometry.dim()) throw std::out_of_range("StateVector::basis: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(geometry.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(geometry), std::move(v));
}

StateVector StateVector::from_label(HilbertGeometry geometry, std::string_view digits) {
  if (digits.size() != geometry.n_sites()) {
    throw std::invalid_argument("StateVector::from_label: label length must equal site count");
  }
  std::size_t index = 0;
  for (std::size_t s = 0; s < digits.size(); ++s) {
    const char c = digits[s];
    if (c < '0' || c > '9' || static_cast<std::size_t>(c - '0') >= geometry.local_dim(s)) {
      throw std::invalid_argument(std::string("StateVector::from_label: bad digit '") + c + "'");
    }
    index += static_cast<std::size_t>(c - '0') * geometry.stride(s);
  }
  return basis(std::move(geometry), index);
}

cplx StateVector::inner(const StateVector& other) const {
  require_same_geometry(geometry_, other.geometry_, "StateVector::inner");
  return amplitudes_.dot(other.amplitudes_);
}

StateVector StateVector::tensor(const StateVector& right) const {
  const Eigen::Index nr = right.dim();
  Vector out(dim() * nr);
  for (Eigen::Index i = 0; i < dim(); ++i) out.segment(i * nr, nr) = amplitudes_(i) * right.amplitudes_;
  return StateVector::normalized(geometry_.compose(right.geometry_), std::move(out));
}

DensityMatrix::DensityMatrix(HilbertGeometry geometry, DenseMatrix entries)
    : geometry_(std::move(geometry)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(geometry_.dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw GeometryMismatch("DensityMatrix: shape does not match geometry " + geometry_.describe());
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw InvalidState("DensityMatrix: not Hermitian");
  }
  const cplx tr = entries_.trace();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw InvalidState("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  if (eigenvalues().minCoeff() < -kStateTol) {
    throw InvalidState("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(Unchecked, HilbertGeometry geometry, DenseMatrix entries)
    : geometry_(std::move(geometry)), entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const Vector& a = psi.amplitudes();
  DenseMatrix rho = a * a.adjoint();
  // Exact Hermitian symmetrization; rank one so positivity holds.
  rho = 0.5 * (rho + DenseMatrix(rho.adjoint()));
  return DensityMatrix(Unchecked{}, psi.geometry(), std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertGeometry& geometry) {
  const auto d = static_cast<Eigen::Index>(geometry.dim());
  return DensityMatrix(Unchecked{}, geometry, DenseMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_geometry(a.geometry(), b.geometry(), "trace_distance");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double phase_aligned_distance(const StateVector& a, const StateVector& b) {
  require_same_geometry(a.geometry(), b.geometry(), "phase_aligned_distance");
  Eigen::Index k = 0;
  b.amplitudes().cwiseAbs().maxCoeff(&k);
  const cplx ak = a.amplitudes()(k);
  const cplx bk = b.amplitudes()(k);
  const cplx phase = std::abs(ak) > 0.0 ? (ak / std::abs(ak)) / (bk / std::abs(bk)) : cplx{1.0, 0.0};
  return (a.amplitudes() - phase * b.amplitudes()).norm();
}

}  // namespace qmt::opcore
