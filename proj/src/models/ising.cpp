#include "qmt/models/ising.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qmt::models {
namespace {

using opcore::cplx;
using opcore::SparseMatrix;
using Triplets = std::vector<Eigen::Triplet<cplx>>;

// Qubit chain helpers: site 0 is the most significant bit.
std::size_t bit_of(std::size_t sites, std::size_t site) { return std::size_t{1} << (sites - 1 - site); }

double z_value(std::size_t index, std::size_t sites, std::size_t site) {
  return (index & bit_of(sites, site)) ? -1.0 : 1.0;
}

void add_chain_terms(Triplets& t, std::size_t sites, const IsingParams& p) {
  const std::size_t dim = std::size_t{1} << sites;
  for (std::size_t c = 0; c < dim; ++c) {
    double diag = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) diag += p.h * z_value(c, sites, i);
    if (diag != 0.0) t.emplace_back(c, c, diag);
    if (p.g != 0.0) {
      for (std::size_t i = 0; i + 1 < p.n; ++i) {
        const std::size_t r = c ^ bit_of(sites, i) ^ bit_of(sites, i + 1);
        t.emplace_back(r, c, p.g);
      }
    }
  }
}

void add_ancilla_terms(Triplets& t, std::size_t sites, std::size_t attach, const AncillaCoupling& a) {
  const std::size_t dim = std::size_t{1} << sites;
  const std::size_t anc = sites - 1;
  for (std::size_t c = 0; c < dim; ++c) {
    if (a.h_a != 0.0) t.emplace_back(c, c, a.h_a * z_value(c, sites, anc));
    if (a.g_a != 0.0) t.emplace_back(c ^ bit_of(sites, attach) ^ bit_of(sites, anc), c, a.g_a);
  }
}

Operator from_triplets(const HilbertGeometry& g, const Triplets& t) {
  const auto d = static_cast<Eigen::Index>(g.dim());
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return Operator(g, std::move(m));
}

std::size_t resolve_attach(const IsingParams& p, const AncillaCoupling& a) {
  const std::size_t attach = a.attach_site.value_or(p.n - 1);
  if (attach >= p.n) throw std::out_of_range("AncillaCoupling: attach site outside the chain");
  if (!std::isfinite(a.h_a) || !std::isfinite(a.g_a)) {
    throw std::invalid_argument("AncillaCoupling: couplings must be finite");
  }
  return attach;
}

}  // namespace

void IsingParams::validate() const {
  if (n < 2) throw std::invalid_argument("IsingParams: n must be >= 2");
  if (!std::isfinite(h) || !std::isfinite(g)) throw std::invalid_argument("IsingParams: h, g must be finite");
}

Operator build_ising(const IsingParams& p, std::size_t max_dim) {
  p.validate();
  const auto geometry = HilbertGeometry::qubits(p.n, max_dim);
  Triplets t;
  t.reserve(geometry.dim() * p.n);
  add_chain_terms(t, p.n, p);
  return from_triplets(geometry, t);
}

Operator build_binary_measurement_hamiltonian(double g) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("build_binary_measurement_hamiltonian: g must be positive");
  }
  // Basis |s a>: index 2s + a.
  opcore::DenseMatrix m = opcore::DenseMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;                     // |0><0| (x) 1
  m(2, 2) = m(3, 3) = m(2, 3) = m(3, 2) = 1.0;  // |1><1| (x) (1 + X)
  return Operator(HilbertGeometry::qubits(2), opcore::DenseMatrix(0.5 * g * m));
}

Operator build_ising_with_ancilla(const IsingParams& p, const AncillaCoupling& a, std::size_t max_dim) {
  p.validate();
  const std::size_t attach = resolve_attach(p, a);
  const auto geometry = HilbertGeometry::qubits(p.n + 1, max_dim);
  Triplets t;
  t.reserve(geometry.dim() * (p.n + 2));
  add_chain_terms(t, p.n + 1, p);
  add_ancilla_terms(t, p.n + 1, attach, a);
  return from_triplets(geometry, t);
}

Operator build_ancilla_terms(const IsingParams& p, const AncillaCoupling& a, std::size_t max_dim) {
  p.validate();
  const std::size_t attach = resolve_attach(p, a);
  const auto geometry = HilbertGeometry::qubits(p.n + 1, max_dim);
  Triplets t;
  add_ancilla_terms(t, p.n + 1, attach, a);
  return from_triplets(geometry, t);
}

std::vector<std::vector<std::size_t>> parity_sectors(const HilbertGeometry& geometry) {
  if (!geometry.all_qubits()) throw std::invalid_argument("parity_sectors: qubit geometry required");
  std::vector<std::vector<std::size_t>> sectors(2);
  for (std::size_t i = 0; i < geometry.dim(); ++i) sectors[std::popcount(i) & 1U].push_back(i);
  return sectors;
}

}  // namespace qmt::models
