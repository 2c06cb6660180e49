#include "qmt/opcore/algebra.hpp"

#include <algorithm>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmt/errors.hpp"
#include "qmt/opcore/norms.hpp"

namespace qmt::opcore {

Operator tensor_product(const Operator& a, const Operator& b) {
  HilbertGeometry g = a.geometry().compose(b.geometry());
  if (a.sparse_view() && b.sparse_view()) {
    SparseMatrix k = Eigen::kroneckerProduct(*a.sparse_view(), *b.sparse_view());
    return Operator(std::move(g), std::move(k));
  }
  DenseMatrix k = Eigen::kroneckerProduct(a.dense(), b.dense());
  return Operator(std::move(g), std::move(k));
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_geometry(a.geometry(), b.geometry(), "commutator");
  return a * b - b * a;
}

double expectation(const StateVector& psi, const Operator& a) {
  require_same_geometry(psi.geometry(), a.geometry(), "expectation");
  if (!a.is_hermitian()) throw NotHermitian("expectation: operator is not Hermitian");
  return psi.amplitudes().dot(a.apply(psi.amplitudes())).real();
}

double variance(const StateVector& psi, const Operator& a) {
  require_same_geometry(psi.geometry(), a.geometry(), "variance");
  if (!a.is_hermitian()) throw NotHermitian("variance: operator is not Hermitian");
  const Vector av = a.apply(psi.amplitudes());
  const double mean = psi.amplitudes().dot(av).real();
  const double second = av.squaredNorm();
  return std::max(0.0, second - mean * mean);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const HilbertGeometry& g = rho.geometry();
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty() || kept.size() >= g.n_sites()) {
    throw std::invalid_argument("partial_trace: keep-set must be a nonempty proper subset");
  }
  if (kept.back() >= g.n_sites()) throw std::out_of_range("partial_trace: site out of range");

  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < g.n_sites(); ++s) {
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
  }
  const HilbertGeometry gk = g.subsystem(kept);
  const HilbertGeometry gt = g.subsystem(traced);
  const std::size_t dk = gk.dim();
  const std::size_t dt = gt.dim();

  // full index of (kept basis k, traced basis t)
  std::vector<Eigen::Index> full(dk * dt);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    std::size_t k = 0;
    std::size_t t = 0;
    for (std::size_t s = 0; s < kept.size(); ++s) k += g.digit(i, kept[s]) * gk.stride(s);
    for (std::size_t s = 0; s < traced.size(); ++s) t += g.digit(i, traced[s]) * gt.stride(s);
    full[k * dt + t] = static_cast<Eigen::Index>(i);
  }

  const DenseMatrix& m = rho.matrix();
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      cplx acc{0.0, 0.0};
      for (std::size_t t = 0; t < dt; ++t) acc += m(full[a * dt + t], full[b * dt + t]);
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  out = 0.5 * (out + DenseMatrix(out.adjoint()));
  return DensityMatrix(gk, std::move(out));
}

double unitarity_defect(const DenseMatrix& u) {
  const DenseMatrix d = u.adjoint() * u - DenseMatrix::Identity(u.rows(), u.cols());
  return spectral_norm_dense(d);
}

double unitarity_defect(const Operator& u) {
  return spectral_norm(u.adjoint() * u - Operator::identity(u.geometry()));
}

Operator heisenberg_evolve(const Operator& a, const Operator& u) {
  require_same_geometry(a.geometry(), u.geometry(), "heisenberg_evolve");
  const double defect = unitarity_defect(u);
  if (!(defect < 1e-10)) {
    throw NotUnitary("heisenberg_evolve: ||u^dagger u - 1|| = " + std::to_string(defect));
  }
  return u.adjoint() * a * u;
}

double hs_fidelity(const Operator& u, const Operator& v) {
  require_same_geometry(u.geometry(), v.geometry(), "hs_fidelity");
  const DenseMatrix du = u.dense();
  const DenseMatrix dv = v.dense();
  return std::abs((du.conjugate().array() * dv.array()).sum()) / static_cast<double>(u.dim());
}

double phase_aligned_distance(const Operator& u, const Operator& v) {
  require_same_geometry(u.geometry(), v.geometry(), "phase_aligned_distance");
  const DenseMatrix du = u.dense();
  const DenseMatrix dv = v.dense();
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  dv.cwiseAbs().maxCoeff(&r, &c);
  cplx phase{1.0, 0.0};
  if (std::abs(du(r, c)) > 0.0 && std::abs(dv(r, c)) > 0.0) {
    phase = (du(r, c) / std::abs(du(r, c))) / (dv(r, c) / std::abs(dv(r, c)));
  }
  return spectral_norm_dense(du - phase * dv);
}

}  // namespace qmt::opcore
