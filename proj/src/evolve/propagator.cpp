#include "qmt/evolve/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qmt/errors.hpp"

namespace qmt::evolve {

using opcore::cplx;

Propagator::Propagator(const Operator& h) : Propagator(h, {}) {}

Propagator::Propagator(const Operator& h, std::vector<std::vector<std::size_t>> sectors) : h_(h) {
  if (!h_.is_hermitian()) throw NotHermitian("Propagator: Hamiltonian is not Hermitian");
  diagonalize(std::move(sectors));
}

void Propagator::diagonalize(std::vector<std::vector<std::size_t>> sectors) {
  const auto dim = static_cast<std::size_t>(h_.dim());
  if (sectors.empty()) {
    sectors.emplace_back(dim);
    std::iota(sectors.front().begin(), sectors.front().end(), std::size_t{0});
  }
  std::vector<std::size_t> owner(dim, sectors.size());
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    if (sectors[s].empty()) throw std::invalid_argument("Propagator: empty sector");
    for (std::size_t i : sectors[s]) {
      if (i >= dim || owner[i] != sectors.size()) {
        throw std::invalid_argument("Propagator: sectors must partition the basis");
      }
      owner[i] = s;
    }
  }
  if (std::find(owner.begin(), owner.end(), sectors.size()) != owner.end()) {
    throw std::invalid_argument("Propagator: sectors must partition the basis");
  }

  const opcore::SparseMatrix hs = h_.sparse();
  const double cross_tol = opcore::kHermitianTol * std::max(1.0, h_.max_abs());
  for (Eigen::Index k = 0; k < hs.outerSize(); ++k) {
    for (opcore::SparseMatrix::InnerIterator it(hs, k); it; ++it) {
      if (owner[static_cast<std::size_t>(it.row())] != owner[static_cast<std::size_t>(it.col())] &&
          std::abs(it.value()) > cross_tol) {
        throw std::invalid_argument("Propagator: Hamiltonian couples two sectors");
      }
    }
  }

  const DenseMatrix hd = h_.dense();
  const bool real = h_.is_real();
  auto blocks = std::make_shared<std::vector<Block>>();
  for (const auto& sector : sectors) {
    Block b;
    b.index.assign(sector.begin(), sector.end());
    std::sort(b.index.begin(), b.index.end());
    const DenseMatrix sub = hd(b.index, b.index);
    if (real) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub.real());
      if (es.info() != Eigen::Success) throw ConvergenceFailure("Propagator: eigensolver failed");
      b.energies = es.eigenvalues();
      b.real_vectors = es.eigenvectors();
      b.vectors = b.real_vectors->cast<cplx>();
    } else {
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sub);
      if (es.info() != Eigen::Success) throw ConvergenceFailure("Propagator: eigensolver failed");
      b.energies = es.eigenvalues();
      b.vectors = es.eigenvectors();
    }
    const DenseMatrix rebuilt = b.vectors * b.energies.cast<cplx>().asDiagonal() * b.vectors.adjoint();
    reconstruction_error_ = std::max(reconstruction_error_, (rebuilt - sub).cwiseAbs().maxCoeff());
    blocks->push_back(std::move(b));
  }
  if (!(reconstruction_error_ <= 1e-9)) {
    throw ConvergenceFailure("Propagator: eigendecomposition reconstructs H only to " +
                             std::to_string(reconstruction_error_));
  }
  blocks_ = std::move(blocks);
}

Eigen::VectorXd Propagator::eigenvalues() const {
  std::vector<double> all;
  for (const auto& b : *blocks_) all.insert(all.end(), b.energies.data(), b.energies.data() + b.energies.size());
  std::sort(all.begin(), all.end());
  return Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

double Propagator::ground_energy() const {
  double e0 = std::numeric_limits<double>::infinity();
  for (const auto& b : *blocks_) e0 = std::min(e0, b.energies.minCoeff());
  return e0;
}

DenseMatrix Propagator::dense_at(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("Propagator: time must be finite");
  const Eigen::Index dim = h_.dim();
  DenseMatrix u = DenseMatrix::Zero(dim, dim);
  for (const auto& b : *blocks_) {
    const Eigen::ArrayXd phase = -t * b.energies.array();
    if (b.real_vectors) {
      const Eigen::MatrixXd& v = *b.real_vectors;
      const Eigen::MatrixXd re = v * phase.cos().matrix().asDiagonal() * v.transpose();
      const Eigen::MatrixXd im = v * phase.sin().matrix().asDiagonal() * v.transpose();
      DenseMatrix ub(re.rows(), re.cols());
      ub.real() = re;
      ub.imag() = im;
      u(b.index, b.index) = ub;
    } else {
      const Eigen::VectorXcd diag = (cplx{0.0, 1.0} * phase.cast<cplx>()).exp().matrix();
      u(b.index, b.index) = b.vectors * diag.asDiagonal() * b.vectors.adjoint();
    }
  }
  return u;
}

Operator Propagator::at(double t) const { return Operator(h_.geometry(), dense_at(t)); }

StateVector Propagator::evolve(const StateVector& psi, double t) const {
  opcore::require_same_geometry(psi.geometry(), h_.geometry(), "Propagator::evolve");
  if (!std::isfinite(t)) throw std::invalid_argument("Propagator: time must be finite");
  opcore::Vector out = opcore::Vector::Zero(psi.dim());
  for (const auto& b : *blocks_) {
    const opcore::Vector amp = psi.amplitudes()(b.index);
    const Eigen::VectorXcd diag = (cplx{0.0, -t} * b.energies.cast<cplx>()).array().exp().matrix();
    out(b.index) = b.vectors * diag.asDiagonal() * (b.vectors.adjoint() * amp);
  }
  return StateVector(psi.geometry(), std::move(out));
}

Operator Propagator::heisenberg(const Operator& a, double t) const {
  opcore::require_same_geometry(a.geometry(), h_.geometry(), "Propagator::heisenberg");
  const DenseMatrix u = dense_at(t);
  return Operator(h_.geometry(), DenseMatrix(u.adjoint() * a.dense() * u));
}

ObservableTrack Propagator::track(const Operator& a) const {
  opcore::require_same_geometry(a.geometry(), h_.geometry(), "Propagator::track");
  ObservableTrack out(blocks_, h_.geometry());
  const DenseMatrix ad = a.dense();
  for (std::size_t i = 0; i < blocks_->size(); ++i) {
    for (std::size_t j = 0; j < blocks_->size(); ++j) {
      const Block& bi = (*blocks_)[i];
      const Block& bj = (*blocks_)[j];
      const DenseMatrix sub = ad(bi.index, bj.index);
      if (sub.cwiseAbs().maxCoeff() == 0.0) continue;
      out.pairs_.push_back({i, j, DenseMatrix(bi.vectors.adjoint() * sub * bj.vectors)});
    }
  }
  return out;
}

ObservableTrack::ObservableTrack(std::shared_ptr<const std::vector<Propagator::Block>> blocks,
                                 opcore::HilbertGeometry g)
    : blocks_(std::move(blocks)), geometry_(std::move(g)) {}

DenseMatrix ObservableTrack::at(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("ObservableTrack: time must be finite");
  const auto dim = static_cast<Eigen::Index>(geometry_.dim());
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (const auto& p : pairs_) {
    const auto& ba = (*blocks_)[p.a];
    const auto& bb = (*blocks_)[p.b];
    const Eigen::VectorXcd left = (cplx{0.0, t} * ba.energies.cast<cplx>()).array().exp().matrix();
    const Eigen::VectorXcd right = (cplx{0.0, -t} * bb.energies.cast<cplx>()).array().exp().matrix();
    const DenseMatrix m = left.asDiagonal() * p.w * right.asDiagonal();
    if (ba.real_vectors && bb.real_vectors) {
      const Eigen::MatrixXd& va = *ba.real_vectors;
      const Eigen::MatrixXd& vb = *bb.real_vectors;
      DenseMatrix block(va.rows(), vb.rows());
      block.real() = va * m.real() * vb.transpose();
      block.imag() = va * m.imag() * vb.transpose();
      out(ba.index, bb.index) = block;
    } else {
      out(ba.index, bb.index) = ba.vectors * m * bb.vectors.adjoint();
    }
  }
  return out;
}

}  // namespace qmt::evolve
