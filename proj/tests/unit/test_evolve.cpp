#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qmt/errors.hpp"
#include "qmt/evolve/product_formulas.hpp"
#include "qmt/evolve/propagator.hpp"
#include "qmt/evolve/time_grid.hpp"
#include "qmt/models/ising.hpp"
#include "qmt/opcore/algebra.hpp"
#include "qmt/opcore/norms.hpp"
#include "qmt/opcore/pauli.hpp"
#include "support/random.hpp"

using namespace qmt;
using namespace qmt::evolve;
using opcore::cplx;
using opcore::HilbertGeometry;
using opcore::Pauli;

namespace {

HilbertGeometry q(std::size_t n) { return HilbertGeometry::qubits(n); }

Operator pauli1(Pauli p) { return Operator(q(1), opcore::pauli_matrix(p)); }

DenseMatrix exact_oracle(const Operator& h, double t) { return (cplx{0.0, -t} * h.dense()).exp(); }

double op_error(const Operator& a, const DenseMatrix& b) { return opcore::spectral_norm_dense(a.dense() - b); }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) { mx += std::log(x[k]); my += std::log(y[k]); }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
  }
  return sxy / sxx;
}

}  // namespace

TEST(TimeGrid, IncludesEndpointOnTheGrid) {
  const TimeGrid g(0.0, 10.0, 0.05);
  EXPECT_EQ(g.size(), 201u);
  EXPECT_DOUBLE_EQ(g.at(200), 10.0);
  EXPECT_EQ(g.points().size(), 201u);
  EXPECT_EQ(TimeGrid(0.0, 1.0, 0.3).size(), 4u);
}

TEST(TimeGrid, RejectsBadInput) {
  EXPECT_THROW(TimeGrid(1.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(TimeGrid(0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(TimeGrid(0.0, std::numeric_limits<double>::infinity(), 0.1), std::invalid_argument);
  EXPECT_THROW(TimeGrid(0.0, 1.0, 1e-9), std::length_error);
  EXPECT_THROW(TimeGrid(0.0, 1.0, 0.1).at(11), std::out_of_range);
}

TEST(Propagator, IdentityAtTimeZero) {
  const Propagator p(models::build_ising({4, 1.0, 1.0}));
  EXPECT_LT(max_abs_difference(p.at(0.0), Operator::identity(q(4))), 1e-12);
}

TEST(Propagator, MatchesMatrixExponential) {
  testkit::Gen gen(42);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator h(q(3), gen.hermitian(8));
    const Propagator p(h);
    for (double t : {-1.3, 0.2, 2.5}) EXPECT_LT((p.dense_at(t) - exact_oracle(h, t)).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LT(p.reconstruction_error(), 1e-12);
  }
}

TEST(Propagator, GroupPropertyOnRandomHermitian) {
  testkit::Gen gen(7);
  const Propagator p(Operator(q(3), gen.hermitian(8)));
  EXPECT_LT(max_abs_difference(p.at(0.3) * p.at(0.7), p.at(1.0)), 1e-9);
  EXPECT_LT(opcore::unitarity_defect(p.at(1.0)), 1e-12);
}

TEST(Propagator, SectorBlocksAgreeWithFullDiagonalization) {
  const Operator h = models::build_ising({6, 0.7, 1.2});
  const Propagator full(h);
  const Propagator blocked(h, models::parity_sectors(h.geometry()));
  EXPECT_EQ(blocked.n_sectors(), 2u);
  EXPECT_LT((full.eigenvalues() - blocked.eigenvalues()).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LT(max_abs_difference(full.at(1.7), blocked.at(1.7)), 1e-11);
}

TEST(Propagator, RejectsBadSectorsAndNonHermitian) {
  const Operator h = models::build_ising({3, 1.0, 1.0});
  EXPECT_THROW(Propagator(h, {{0, 1, 2, 3}, {4, 5, 6}}), std::invalid_argument);
  EXPECT_THROW(Propagator(h, {{0, 1, 2, 3}, {4, 5, 6, 7}}), std::invalid_argument);
  EXPECT_THROW(Propagator(Operator(q(1), opcore::ketbra(2, 0, 1))), NotHermitian);
}

TEST(Propagator, MeasurementHamiltonianAtPiOverGIsTheControlledFlipTimesAPhaseGate) {
  for (double g : {0.5, 1.0, 4.0}) {
    const Propagator p(models::build_binary_measurement_hamiltonian(g));
    const DenseMatrix u = p.dense_at(std::numbers::pi / g);
    DenseMatrix cnot = DenseMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    DenseMatrix phase = DenseMatrix::Zero(2, 2);
    phase(0, 0) = cplx{0.0, -1.0};
    phase(1, 1) = -1.0;
    const DenseMatrix expected = Eigen::kroneckerProduct(phase, DenseMatrix::Identity(2, 2)).eval() * cnot;
    EXPECT_LT((u - expected).cwiseAbs().maxCoeff(), 1e-12);
    // The residual relative phase is not global.
    EXPECT_NEAR(opcore::hs_fidelity(Operator(q(2), u), Operator(q(2), cnot)), std::sqrt(0.5), 1e-12);
  }
}

TEST(Propagator, EnergyIsConserved) {
  testkit::Gen gen(19);
  const Operator h = models::build_ising({5, 0.9, 1.1});
  const Propagator p(h);
  const auto psi = gen.state(q(5));
  const double e0 = opcore::expectation(psi, h);
  for (double t : {0.5, 3.0, 11.0}) EXPECT_NEAR(opcore::expectation(p.evolve(psi, t), h), e0, 1e-9);
}

TEST(Propagator, TrackMatchesHeisenbergPicture) {
  const Operator h = models::build_ising({5, 1.0, 1.0});
  const Propagator p(h, models::parity_sectors(h.geometry()));
  const Operator z0 = opcore::materialize_pauli_string(opcore::PauliString::single(q(5), 0, Pauli::Z));
  const auto track = p.track(z0);
  for (double t : {-0.8, 0.0, 1.9}) {
    const DenseMatrix u = exact_oracle(h, t);
    const DenseMatrix oracle = u.adjoint() * z0.dense() * u;
    EXPECT_LT((track.at(t) - oracle).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LT((p.heisenberg(z0, t).dense() - oracle).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(Trotter, CommutingGeneratorsAreExact) {
  const Operator x = models::build_ising({3, 1.0, 0.0});
  const Operator y = cplx{0.4} * x;
  for (std::size_t steps : {1u, 3u, 17u}) {
    EXPECT_LT(op_error(trotter_evolve(x, y, 1.3, steps), exact_oracle(x + y, 1.3)), 1e-12);
  }
}

TEST(Trotter, ErrorHalvesWhenStepsDouble) {
  const Operator x = pauli1(Pauli::X), y = pauli1(Pauli::Z);
  const DenseMatrix exact = exact_oracle(x + y, 1.0);
  for (std::size_t steps : {16u, 64u, 256u}) {
    const double e1 = op_error(trotter_evolve(x, y, 1.0, steps), exact);
    const double e2 = op_error(trotter_evolve(x, y, 1.0, 2 * steps), exact);
    EXPECT_NEAR(e2 / e1, 0.5, 0.1);
  }
}

TEST(Trotter, FirstOrderErrorConstant) {
  // Each step errs by -(dt^2/2)[x, y]; carried to time t the total is
  // -(dt/2) int_0^t U(t-s) [x, y] U(s) ds. Simpson quadrature on the exact
  // exponential gives the constant. At 10^4 steps this leaves ~1e-4, not 1e-6.
  const Operator x = pauli1(Pauli::X), y = pauli1(Pauli::Z);
  const double t = 1.0;
  const Operator h = x + y;
  const DenseMatrix c = opcore::commutator(x, y).dense();
  const int panels = 200;
  DenseMatrix integral = DenseMatrix::Zero(2, 2);
  for (int k = 0; k <= panels; ++k) {
    const double s = t * k / panels;
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    integral += w * exact_oracle(h, t - s) * c * exact_oracle(h, s);
  }
  integral *= t / (3.0 * panels);
  const double constant = 0.5 * opcore::spectral_norm_dense(integral);

  const std::size_t steps = 10000;
  const double err = op_error(trotter_evolve(x, y, t, steps), exact_oracle(h, t));
  EXPECT_NEAR(err * static_cast<double>(steps) / t / constant, 1.0, 0.01);
  EXPECT_GT(err, 1e-6);
  EXPECT_LT(opcore::unitarity_defect(trotter_evolve(x, y, t, steps)), 1e-10);
}

TEST(Trotter, RejectsZeroStepsAndMismatchedGeometry) {
  EXPECT_THROW(trotter_evolve(pauli1(Pauli::X), pauli1(Pauli::Z), 1.0, 0), std::invalid_argument);
  EXPECT_THROW(trotter_evolve(pauli1(Pauli::X), Operator::identity(q(2)), 1.0, 1), GeometryMismatch);
}

TEST(Zassenhaus, CommutingInputsAreExactAtEveryOrder) {
  const Operator x = pauli1(Pauli::Z), y = cplx{-2.5} * pauli1(Pauli::Z);
  for (int order : {1, 2, 3}) EXPECT_LT(op_error(zassenhaus_truncated(x, y, 0.7, order), exact_oracle(x + y, 0.7)), 1e-13);
}

TEST(Zassenhaus, ErrorSlopesMatchTruncationOrder) {
  const Operator x = pauli1(Pauli::X), y = pauli1(Pauli::Z);
  std::vector<double> ts;
  for (int k = 0; k <= 10; ++k) ts.push_back(0.01 * std::pow(10.0, k / 10.0));
  for (int order : {1, 2, 3}) {
    std::vector<double> errs;
    for (double t : ts) errs.push_back(op_error(zassenhaus_truncated(x, y, t, order), exact_oracle(x + y, t)));
    EXPECT_NEAR(loglog_slope(ts, errs), order + 1.0, 0.1 * (order + 1.0)) << "order " << order;
  }
}

TEST(Zassenhaus, RejectsUnsupportedOrder) {
  EXPECT_THROW(zassenhaus_truncated(pauli1(Pauli::X), pauli1(Pauli::Z), 0.1, 4), std::invalid_argument);
  EXPECT_THROW(zassenhaus_truncated(pauli1(Pauli::X), pauli1(Pauli::Z), 0.1, 0), std::invalid_argument);
}

TEST(Reachability, CommutingPairHasZeroNestedNorms) {
  const Operator x = pauli1(Pauli::Z), y = cplx{3.0} * pauli1(Pauli::Z);
  const auto r = reachability_probe(x, y, Operator::identity(q(1)), 4);
  ASSERT_EQ(r.nested_norms.size(), 4u);
  for (double v : r.nested_norms) EXPECT_EQ(v, 0.0);
}

TEST(Reachability, DepthOneIsTheCommutatorNorm) {
  const Operator x = pauli1(Pauli::X), y = pauli1(Pauli::Z);
  const auto r = reachability_probe(x, y, Operator::identity(q(1)), 1);
  EXPECT_NEAR(r.nested_norms[0], opcore::spectral_norm(opcore::commutator(x, y)), 1e-14);
}

TEST(Reachability, IsingWithAncillaSplitHasNonzeroBrackets) {
  const models::IsingParams p{3, 1.0, 1.0};
  const models::AncillaCoupling a{0.6, 0.8, std::nullopt};
  const Operator chain = opcore::tensor_product(models::build_ising(p), Operator::identity(q(1)));
  const Operator anc = models::build_ancilla_terms(p, a);
  const auto r = reachability_probe(chain, anc, Operator::identity(q(4)), 3);
  for (double v : r.nested_norms) EXPECT_GT(v, 0.1);
}

TEST(Reachability, SingleQubitPaulisSpanSu2) {
  const Operator x = pauli1(Pauli::X), y = pauli1(Pauli::Z);
  testkit::Gen gen(31);
  const Operator target(q(1), gen.unitary(2));
  const auto r = reachability_probe(x, y, target, 3);
  EXPECT_EQ(r.span_rank, 4u);
  EXPECT_LT(r.generator_residual, 1e-10);
}

TEST(Reachability, RejectsNonUnitaryTargetAndZeroDepth) {
  const Operator x = pauli1(Pauli::X), y = pauli1(Pauli::Z);
  EXPECT_THROW(reachability_probe(x, y, cplx{2.0} * Operator::identity(q(1)), 2), NotUnitary);
  EXPECT_THROW(reachability_probe(x, y, Operator::identity(q(1)), 0), std::invalid_argument);
}
