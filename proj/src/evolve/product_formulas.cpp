#include "qmt/evolve/product_formulas.hpp"

#include <Eigen/QR>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "qmt/errors.hpp"
#include "qmt/evolve/propagator.hpp"
#include "qmt/opcore/algebra.hpp"
#include "qmt/opcore/norms.hpp"

namespace qmt::evolve {
namespace {

using opcore::cplx;

void require_pair(const Operator& x, const Operator& y, const char* context) {
  opcore::require_same_geometry(x.geometry(), y.geometry(), context);
  if (!x.is_hermitian() || !y.is_hermitian()) {
    throw NotHermitian(std::string(context) + ": generators must be Hermitian");
  }
}

DenseMatrix bracket(const DenseMatrix& a, const DenseMatrix& b) { return a * b - b * a; }

DenseMatrix matrix_power(DenseMatrix base, std::size_t n) {
  DenseMatrix result = DenseMatrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Eigen::VectorXd realify(const DenseMatrix& m) {
  Eigen::VectorXd v(2 * m.size());
  v.head(m.size()) = Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()).real();
  v.tail(m.size()) = Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()).imag();
  return v;
}

}  // namespace

Operator trotter_evolve(const Operator& x, const Operator& y, double t, std::size_t steps) {
  require_pair(x, y, "trotter_evolve");
  if (steps == 0) throw std::invalid_argument("trotter_evolve: steps must be at least 1");
  const double dt = t / static_cast<double>(steps);
  const DenseMatrix step = Propagator(x).dense_at(dt) * Propagator(y).dense_at(dt);
  return Operator(x.geometry(), matrix_power(step, steps));
}

Operator zassenhaus_truncated(const Operator& x, const Operator& y, double t, int order) {
  require_pair(x, y, "zassenhaus_truncated");
  if (order < 1 || order > 3) {
    throw std::invalid_argument("zassenhaus_truncated: order must be 1, 2 or 3, got " + std::to_string(order));
  }
  DenseMatrix u = Propagator(x).dense_at(t) * Propagator(y).dense_at(t);
  if (order >= 2) {
    const DenseMatrix xp = cplx{0.0, -1.0} * x.dense();
    const DenseMatrix yp = cplx{0.0, -1.0} * y.dense();
    const DenseMatrix c = bracket(xp, yp);
    u = u * DenseMatrix(-(t * t / 2.0) * c).exp();
    if (order >= 3) {
      const DenseMatrix third = 2.0 * bracket(yp, c) + bracket(xp, c);
      u = u * DenseMatrix((t * t * t / 6.0) * third).exp();
    }
  }
  return Operator(x.geometry(), std::move(u));
}

Operator exact_evolution(const Operator& x, const Operator& y, double t) {
  require_pair(x, y, "exact_evolution");
  return Propagator(x + y).at(t);
}

ReachabilityReport reachability_probe(const Operator& x, const Operator& y, const Operator& target,
                                      std::size_t depth) {
  require_pair(x, y, "reachability_probe");
  opcore::require_same_geometry(x.geometry(), target.geometry(), "reachability_probe");
  if (depth == 0 || depth > 12) throw std::invalid_argument("reachability_probe: depth must be in 1..12");
  const double defect = opcore::unitarity_defect(target);
  if (!(defect < 1e-10)) throw NotUnitary("reachability_probe: target is not unitary");

  const DenseMatrix xd = x.dense();
  const DenseMatrix yd = y.dense();
  const auto dim = xd.rows();

  ReachabilityReport report;
  std::vector<DenseMatrix> generators{DenseMatrix::Identity(dim, dim), xd, yd};
  std::vector<DenseMatrix> level{bracket(xd, yd)};
  cplx herm_factor{0.0, 1.0};  // i^k makes a k-fold bracket Hermitian
  for (std::size_t k = 1; k <= depth; ++k) {
    double worst = 0.0;
    for (const auto& w : level) {
      worst = std::max(worst, opcore::spectral_norm_dense(w));
      generators.push_back(herm_factor * w);
    }
    report.nested_norms.push_back(worst);
    if (k == depth) break;
    std::vector<DenseMatrix> next;
    next.reserve(2 * level.size());
    for (const auto& w : level) {
      next.push_back(bracket(xd, w));
      next.push_back(bracket(yd, w));
    }
    level = std::move(next);
    herm_factor *= cplx{0.0, 1.0};
  }

  Eigen::MatrixXd span(2 * dim * dim, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t c = 0; c < generators.size(); ++c) span.col(static_cast<Eigen::Index>(c)) = realify(generators[c]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(span);
  qr.setThreshold(1e-10);
  report.span_rank = static_cast<std::size_t>(qr.rank());

  DenseMatrix g = cplx{0.0, 1.0} * target.dense().log();
  g = 0.5 * (g + DenseMatrix(g.adjoint()));
  const Eigen::VectorXd gv = realify(g);
  const double gn = gv.norm();
  if (gn > 0.0) {
    const Eigen::VectorXd coeffs = qr.solve(gv);
    report.generator_residual = (gv - span * coeffs).norm() / gn;
  }
  return report;
}

}  // namespace qmt::evolve
