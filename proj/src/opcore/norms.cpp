#include "qmt/opcore/norms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "qmt/errors.hpp"

namespace qmt::opcore {
namespace {

Vector random_unit_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx{gauss(rng), gauss(rng)};
  return v / v.norm();
}

double max_abs_eigenvalue(const DenseMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("spectral_norm: eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double spectral_norm_dense(const DenseMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double tol = 1e-13 * scale;
  if (a.rows() == a.cols()) {
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() <= tol) return max_abs_eigenvalue(a);
    if ((a + a.adjoint()).cwiseAbs().maxCoeff() <= tol) {
      return max_abs_eigenvalue(DenseMatrix(cplx{0.0, 1.0} * a));
    }
  }
  Eigen::BDCSVD<DenseMatrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm_power(const Operator& a, const SpectralNormOptions& options) {
  const Operator adj = a.adjoint();
  Vector v = random_unit_vector(a.dim(), options.seed);
  double previous = -1.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const Vector w = a.apply(v);
    const double theta = w.squaredNorm();  // v^dagger a^dagger a v
    if (theta == 0.0) {
      if (it == 0) return 0.0;
      break;
    }
    Vector z = adj.apply(w);
    const double residual = (z - theta * v).norm();
    if (residual <= options.relative_tolerance * theta &&
        std::abs(theta - previous) <= options.relative_tolerance * theta) {
      return std::sqrt(theta);
    }
    previous = theta;
    v = z / z.norm();
  }
  throw ConvergenceFailure("spectral_norm_power: no convergence after " +
                           std::to_string(options.max_iterations) + " iterations");
}

double spectral_norm(const Operator& a, const SpectralNormOptions& options) {
  if (static_cast<std::size_t>(a.dim()) <= options.dense_max_dim) {
    if (a.nonzeros() == 0) return 0.0;
    return spectral_norm_dense(a.dense());
  }
  return spectral_norm_power(a, options);
}

double largest_singular_value(const Eigen::Ref<const DenseMatrix>& a, const LanczosOptions& options) {
  const Eigen::Index n = a.cols();
  if (n == 0 || a.rows() == 0) return 0.0;
  const Eigen::Index kmax = std::min<Eigen::Index>(n, options.max_krylov);

  DenseMatrix basis(n, kmax);
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.col(0) = random_unit_vector(n, options.seed);
  double theta = 0.0;

  for (Eigen::Index k = 0; k < kmax; ++k) {
    Vector w = a.adjoint() * (a * basis.col(k));
    alpha.push_back(basis.col(k).dot(w).real());
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Vector coeffs = basis.leftCols(k + 1).adjoint() * w;
      w.noalias() -= basis.leftCols(k + 1) * coeffs;
    }
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    theta = tri.eigenvalues()(m - 1);
    const double ritz_residual = b * std::abs(tri.eigenvectors()(m - 1, m - 1));
    if (theta <= 0.0 && b <= 1e-300) return 0.0;
    if (ritz_residual <= options.relative_tolerance * std::max(theta, 1e-300) || b <= 1e-14 * std::max(theta, 1e-300)) {
      return std::sqrt(std::max(theta, 0.0));
    }
    if (k + 1 == kmax) break;
    beta.push_back(b);
    basis.col(k + 1) = w / b;
  }
  if (kmax == n) return std::sqrt(std::max(theta, 0.0));
  throw ConvergenceFailure("largest_singular_value: Krylov space exhausted without convergence");
}

}  // namespace qmt::opcore
