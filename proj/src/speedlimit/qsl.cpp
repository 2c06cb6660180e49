#include "qmt/speedlimit/qsl.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qmt/errors.hpp"
#include "qmt/opcore/algebra.hpp"

namespace qmt::speedlimit {

QslResult qsl_time(const opcore::Operator& h, const opcore::StateVector& psi, std::optional<double> e0) {
  opcore::require_same_geometry(h.geometry(), psi.geometry(), "qsl_time");
  if (!h.is_hermitian()) throw NotHermitian("qsl_time: Hamiltonian is not Hermitian");
  QslResult r;
  if (e0) {
    r.ground_energy = *e0;
  } else {
    if (h.dim() > (Eigen::Index{1} << 12)) {
      throw std::invalid_argument("qsl_time: pass the ground energy explicitly above dimension 4096");
    }
    Eigen::SelfAdjointEigenSolver<opcore::DenseMatrix> es(h.dense(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("qsl_time: eigensolver failed");
    r.ground_energy = es.eigenvalues()(0);
  }
  r.mean_energy = opcore::expectation(psi, h);
  r.energy_spread = std::sqrt(opcore::variance(psi, h));

  constexpr double inf = std::numeric_limits<double>::infinity();
  const double gap = r.mean_energy - r.ground_energy;
  r.mt_unreachable = r.energy_spread < kQslDenominatorTol;
  r.ml_unreachable = gap < kQslDenominatorTol;
  r.tau_mt = r.mt_unreachable ? inf : std::numbers::pi / (2.0 * r.energy_spread);
  r.tau_ml = r.ml_unreachable ? inf : std::numbers::pi / (2.0 * gap);
  r.tau_qsl = std::max(r.tau_mt, r.tau_ml);
  return r;
}

}  // namespace qmt::speedlimit
