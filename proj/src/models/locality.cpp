#include "qmt/models/locality.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qmt/opcore/algebra.hpp"
#include "qmt/opcore/norms.hpp"
#include "qmt/opcore/pauli.hpp"

namespace qmt::models {
namespace {

bool nonzero_commutator(double norm, const Operator& a, const Operator& b) {
  const double scale = a.max_abs() * b.max_abs();
  return scale > 0.0 && norm > 1e-12 * scale;
}

}  // namespace

void LocalHamiltonianSpec::validate() const {
  std::set<std::size_t> used;
  for (const auto& v : volumes) {
    opcore::require_same_geometry(geometry, v.op.geometry(), "LocalHamiltonianSpec volume");
    if (v.support.empty()) throw std::invalid_argument("LocalHamiltonianSpec: empty support");
    for (std::size_t s : v.support) {
      if (s >= geometry.n_sites()) throw std::invalid_argument("LocalHamiltonianSpec: support site out of range");
      if (!used.insert(s).second) throw std::invalid_argument("LocalHamiltonianSpec: overlapping supports");
    }
  }
  for (const auto& c : couplings) {
    opcore::require_same_geometry(geometry, c.op.geometry(), "LocalHamiltonianSpec coupling");
    if (c.i == c.j) throw std::invalid_argument("LocalHamiltonianSpec: coupling must join two volumes");
    if (c.i >= volumes.size() || c.j >= volumes.size()) {
      throw std::invalid_argument("LocalHamiltonianSpec: coupling names an unknown volume");
    }
    if (!(c.distance > 0.0) || !std::isfinite(c.distance)) {
      throw std::invalid_argument("LocalHamiltonianSpec: distances must be positive");
    }
  }
}

Operator LocalHamiltonianSpec::total() const {
  Operator h = Operator::zero(geometry);
  for (const auto& v : volumes) h = h + v.op;
  for (const auto& c : couplings) h = h + c.op;
  return h;
}

LocalityReport locality_report(const LocalHamiltonianSpec& spec) {
  spec.validate();
  LocalityReport report;
  std::vector<bool> interacting(spec.volumes.size(), false);

  std::vector<double> log_d;
  std::vector<double> log_norm;
  for (const auto& c : spec.couplings) {
    const Operator& hi = spec.volumes[c.i].op;
    const Operator& hj = spec.volumes[c.j].op;
    PairLocality p{c.i, c.j, c.distance, opcore::spectral_norm(opcore::commutator(hi, c.op)),
                   opcore::spectral_norm(opcore::commutator(hj, c.op))};
    if (nonzero_commutator(p.norm_i, hi, c.op)) {
      interacting[c.i] = true;
      log_d.push_back(std::log(c.distance));
      log_norm.push_back(std::log(p.norm_i));
    }
    if (nonzero_commutator(p.norm_j, hj, c.op)) interacting[c.j] = true;
    report.pairs.push_back(p);
  }
  for (std::size_t v = 0; v < interacting.size(); ++v) {
    if (!interacting[v]) report.isolated_volumes.push_back(v);
  }
  report.connected = report.isolated_volumes.empty() && !spec.volumes.empty();

  const std::set<double> distinct(log_d.begin(), log_d.end());
  if (distinct.size() >= 2) {
    const auto n = static_cast<double>(log_d.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < log_d.size(); ++k) { mx += log_d[k]; my += log_norm[k]; }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < log_d.size(); ++k) {
      sxy += (log_d[k] - mx) * (log_norm[k] - my);
      sxx += (log_d[k] - mx) * (log_d[k] - mx);
    }
    report.decay_exponent = sxy / sxx;
  }
  return report;
}

LocalHamiltonianSpec ising_locality_spec(const IsingParams& p) {
  p.validate();
  using opcore::Pauli;
  using opcore::PauliString;
  const auto geometry = HilbertGeometry::qubits(p.n);
  LocalHamiltonianSpec spec{geometry, {}, {}};
  for (std::size_t i = 0; i < p.n; ++i) {
    spec.volumes.push_back(
        {{i}, opcore::cplx{p.h} * opcore::materialize_pauli_string(PauliString::single(geometry, i, Pauli::Z))});
  }
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = i + 1; j < p.n; ++j) {
      Operator op = j == i + 1 ? opcore::cplx{p.g} * opcore::materialize_pauli_string(
                                                  PauliString::pair(geometry, i, Pauli::X, j, Pauli::X))
                               : Operator::zero(geometry);
      spec.couplings.push_back({i, j, std::move(op), static_cast<double>(j - i)});
    }
  }
  return spec;
}

LocalHamiltonianSpec power_law_line_spec(std::size_t volumes, double exponent) {
  if (volumes < 2) throw std::invalid_argument("power_law_line_spec: need at least two volumes");
  using opcore::Pauli;
  using opcore::PauliString;
  const auto geometry = HilbertGeometry::qubits(volumes);
  LocalHamiltonianSpec spec{geometry, {}, {}};
  for (std::size_t i = 0; i < volumes; ++i) {
    spec.volumes.push_back({{i}, opcore::materialize_pauli_string(PauliString::single(geometry, i, Pauli::Z))});
  }
  for (std::size_t i = 0; i < volumes; ++i) {
    for (std::size_t j = i + 1; j < volumes; ++j) {
      const double d = static_cast<double>(j - i);
      spec.couplings.push_back(
          {i, j,
           opcore::cplx{std::pow(d, exponent)} *
               opcore::materialize_pauli_string(PauliString::pair(geometry, i, Pauli::X, j, Pauli::X)),
           d});
    }
  }
  return spec;
}

}  // namespace qmt::models
