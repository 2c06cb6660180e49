#pragma once

// Randomized structural properties. Shared by the gtest property suite and
// the acceptance binary so both exercise the same generators and tolerances.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qmt/evolve/product_formulas.hpp"
#include "qmt/evolve/propagator.hpp"
#include "qmt/lightcone/cone.hpp"
#include "qmt/measure/ancilla.hpp"
#include "qmt/measure/projective.hpp"
#include "qmt/opcore/algebra.hpp"
#include "qmt/opcore/norms.hpp"
#include "qmt/speedlimit/qsl.hpp"
#include "support/random.hpp"

namespace qmt::testkit {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Largest observed defect, in the property's own units.
  double worst = 0.0;
  std::string first_failure;
};

namespace detail {

inline HilbertGeometry random_qubits(Gen& gen, std::size_t max_sites) {
  return HilbertGeometry::qubits(1 + gen.index(max_sites));
}

inline double max_diff(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Runs `cases` trials; each returns a defect that must stay below `tol`.
inline PropertyResult run(const std::string& name, std::uint64_t seed, std::size_t cases, double tol,
                          const std::function<double(Gen&)>& trial) {
  PropertyResult r;
  r.name = name;
  for (std::size_t k = 0; k < cases; ++k) {
    Gen gen(seed * 1000003u + k);
    double defect = 0.0;
    std::string what;
    try {
      defect = trial(gen);
    } catch (const std::exception& e) {
      defect = std::numeric_limits<double>::infinity();
      what = e.what();
    }
    ++r.cases;
    r.worst = std::max(r.worst, defect);
    if (!(defect < tol)) {
      ++r.failures;
      if (r.first_failure.empty()) {
        r.first_failure = "case " + std::to_string(k) + ": defect " + std::to_string(defect) + (what.empty() ? "" : " (" + what + ")");
      }
    }
  }
  return r;
}

}  // namespace detail

/// ||U^dagger U - 1|| for exact propagators of random Hermitian H on 1-4 qubits.
inline PropertyResult prop_propagator_unitary(std::uint64_t seed) {
  return detail::run("propagator unitarity", seed, 40, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 4);
    const evolve::Propagator p(opcore::Operator(g, gen.hermitian(static_cast<Eigen::Index>(g.dim()))));
    return opcore::unitarity_defect(p.at(gen.uniform(-20.0, 20.0)));
  });
}

/// Propagator group law U(s) U(t) = U(s + t).
inline PropertyResult prop_propagator_group(std::uint64_t seed) {
  return detail::run("propagator group law", seed, 20, 1e-9, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 3);
    const evolve::Propagator p(opcore::Operator(g, gen.hermitian(static_cast<Eigen::Index>(g.dim()))));
    const double s = gen.uniform(-3.0, 3.0), t = gen.uniform(-3.0, 3.0);
    return max_abs_difference(p.at(s) * p.at(t), p.at(s + t));
  });
}

/// Product formulas stay unitary at every order and step count.
inline PropertyResult prop_product_formulas_unitary(std::uint64_t seed) {
  return detail::run("product formula unitarity", seed, 20, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 2);
    const auto dim = static_cast<Eigen::Index>(g.dim());
    const opcore::Operator x(g, gen.hermitian(dim)), y(g, gen.hermitian(dim));
    const double t = gen.uniform(0.01, 2.0);
    double worst = opcore::unitarity_defect(evolve::trotter_evolve(x, y, t, 1 + gen.index(200)));
    for (int order : {1, 2, 3}) worst = std::max(worst, opcore::unitarity_defect(evolve::zassenhaus_truncated(x, y, t, order)));
    return worst;
  });
}

/// Random projective measurements pass completeness and orthogonality.
inline PropertyResult prop_measurement_defects(std::uint64_t seed) {
  return detail::run("measurement completeness/orthogonality", seed, 30, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 3);
    const auto m = gen.measurement(g, 1 + gen.index(g.dim()));
    const auto d = measure::measurement_defects(m.outcomes());
    return std::max({d.orthogonality, d.completeness, d.hermiticity});
  });
}

/// Born probabilities are nonnegative and sum to one.
inline PropertyResult prop_born_normalized(std::uint64_t seed) {
  return detail::run("Born normalization", seed, 30, 1e-12, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 3);
    const auto m = gen.measurement(g, 1 + gen.index(g.dim()));
    const auto p = measure::born_probabilities(gen.density(g), m);
    double sum = 0.0, neg = 0.0;
    for (double v : p) { sum += v; neg = std::max(neg, -v); }
    return std::max(std::abs(sum - 1.0), neg);
  });
}

/// sum_r p(r) collapse(rho, r) equals sum_r Pi(r) rho Pi(r).
inline PropertyResult prop_collapse_mixture(std::uint64_t seed, std::size_t cases = 50) {
  return detail::run("collapse mixture equals dephasing", seed, cases, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 2);
    const auto m = gen.measurement(g, 2);
    const auto rho = gen.density(g);
    const auto outcomes = measure::measure_all(rho, m);
    DenseMatrix mix = DenseMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& o : outcomes)
      if (o.state) mix += o.probability * o.state->matrix();
    return detail::max_diff(mix, measure::dephase(rho, m).matrix());
  });
}

/// Partial trace keeps the trace, Hermiticity and positivity.
inline PropertyResult prop_partial_trace(std::uint64_t seed) {
  return detail::run("partial trace preservation", seed, 40, 1e-10, [](Gen& gen) {
    const auto g = HilbertGeometry::qubits(2 + gen.index(3));
    const auto rho = gen.density(g);
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < g.n_sites(); ++s)
      if (gen.uniform() < 0.5) keep.push_back(s);
    if (keep.empty()) keep.push_back(gen.index(g.n_sites()));
    if (keep.size() == g.n_sites()) keep.pop_back();
    const auto red = opcore::partial_trace(rho, keep);
    const DenseMatrix& r = red.matrix();
    const double herm = detail::max_diff(r, r.adjoint());
    const double neg = std::max(0.0, -red.eigenvalues().minCoeff());
    return std::max({std::abs(r.trace() - opcore::cplx{1.0}), herm, neg});
  });
}

/// Commutators are antisymmetric and satisfy the Jacobi identity.
inline PropertyResult prop_commutator_algebra(std::uint64_t seed) {
  return detail::run("commutator algebra", seed, 20, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 3);
    const auto dim = static_cast<Eigen::Index>(g.dim());
    const opcore::Operator a(g, gen.ginibre(dim, dim)), b(g, gen.ginibre(dim, dim)), c(g, gen.ginibre(dim, dim));
    using opcore::commutator;
    const double anti = (commutator(a, b) + commutator(b, a)).max_abs();
    const double jacobi =
        (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))).max_abs();
    return std::max(anti, jacobi);
  });
}

/// Spectral norm: triangle inequality and unitary invariance.
inline PropertyResult prop_spectral_norm(std::uint64_t seed) {
  return detail::run("spectral norm axioms", seed, 20, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 4);
    const auto dim = static_cast<Eigen::Index>(g.dim());
    const opcore::Operator a(g, gen.ginibre(dim, dim)), b(g, gen.ginibre(dim, dim)), u(g, gen.unitary(dim));
    const double na = opcore::spectral_norm(a), nb = opcore::spectral_norm(b);
    const double triangle = std::max(0.0, opcore::spectral_norm(a + b) - na - nb);
    const double invariance = std::abs(opcore::spectral_norm(u * a * u.adjoint()) - na) / na;
    return std::max(triangle, invariance);
  });
}

/// Ancilla protocol: readout is Born, the reduced state is the dephased one.
inline PropertyResult prop_ancilla_protocol(std::uint64_t seed) {
  return detail::run("ancilla protocol reproduces measurement", seed, 30, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 2);
    const std::size_t n = 1 + gen.index(std::min<std::size_t>(g.dim(), 3));
    const auto m = gen.measurement(g, n);
    const auto r = measure::run_ancilla_protocol(gen.state(g), m, measure::ExactUnitary{}, 0.0);
    double worst = r.dephasing_distance;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(r.readout[k] - r.born[k]));
    return worst;
  });
}

/// The speed limit is a lower bound: |<psi|psi(t)>| > 0 before tau_qsl.
inline PropertyResult prop_qsl_lower_bound(std::uint64_t seed) {
  return detail::run("QSL is a lower bound on orthogonalization", seed, 20, 1e-12, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 3);
    const opcore::Operator h(g, gen.hermitian(static_cast<Eigen::Index>(g.dim())));
    const auto psi = gen.state(g);
    const auto q = speedlimit::qsl_time(h, psi);
    if (q.unreachable()) return 0.0;
    const evolve::Propagator p(h);
    double worst = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double t = q.tau_qsl * k / 50.0;
      const double overlap = std::abs(psi.inner(p.evolve(psi, t)));
      // The MT bound gives |<psi|psi(t)>| >= cos(dH t) for dH t <= pi/2.
      const double floor = std::cos(q.energy_spread * t);
      worst = std::max(worst, std::max(0.0, floor - overlap - 1e-13));
    }
    return worst;
  });
}

/// Light-cone norms lie in [0, 2] and vanish at t = 0 off the source.
inline PropertyResult prop_cone_bounds(std::uint64_t seed) {
  return detail::run("light-cone norm range", seed, 10, 1e-10, [](Gen& gen) {
    const models::IsingParams p{3 + gen.index(4), gen.uniform(-2.0, 2.0), gen.uniform(-2.0, 2.0)};
    const opcore::Pauli letters[] = {opcore::Pauli::X, opcore::Pauli::Y, opcore::Pauli::Z};
    lightcone::ConeOptions opt;
    opt.source_op = letters[gen.index(3)];
    const std::size_t source = gen.index(p.n);
    const auto scan = lightcone::cone_scan(p, source, letters[gen.index(3)], evolve::TimeGrid(0.0, 3.0, 0.25), opt);
    double worst = std::max(0.0, scan.norms.maxCoeff() - 2.0);
    worst = std::max(worst, -scan.norms.minCoeff());
    for (std::size_t j = 0; j < p.n; ++j)
      if (j != source) worst = std::max(worst, scan.norms(static_cast<Eigen::Index>(j), 0));
    return worst;
  });
}

/// Heisenberg evolution preserves the spectrum of a Hermitian observable.
inline PropertyResult prop_heisenberg_spectrum(std::uint64_t seed) {
  return detail::run("Heisenberg evolution preserves spectrum", seed, 20, 1e-10, [](Gen& gen) {
    const auto g = detail::random_qubits(gen, 3);
    const auto dim = static_cast<Eigen::Index>(g.dim());
    const DenseMatrix a = gen.hermitian(dim);
    const DenseMatrix b = opcore::heisenberg_evolve(opcore::Operator(g, a), opcore::Operator(g, gen.unitary(dim))).dense();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> ea(a), eb(b);
    return (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff();
  });
}

inline std::vector<PropertyResult> run_property_suite(std::uint64_t seed = 2024) {
  return {prop_propagator_unitary(seed),  prop_propagator_group(seed),   prop_product_formulas_unitary(seed),
          prop_measurement_defects(seed), prop_born_normalized(seed),    prop_collapse_mixture(seed),
          prop_partial_trace(seed),       prop_commutator_algebra(seed), prop_spectral_norm(seed),
          prop_ancilla_protocol(seed),    prop_qsl_lower_bound(seed),    prop_cone_bounds(seed),
          prop_heisenberg_spectrum(seed)};
}

}  // namespace qmt::testkit
