#include "qmt/opcore/pauli.hpp"

#include <vector>

#include "qmt/errors.hpp"

namespace qmt::opcore {

std::optional<Pauli> parse_pauli(char letter) noexcept {
  switch (letter) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: return std::nullopt;
  }
}

char to_char(Pauli p) noexcept { return static_cast<char>(p); }

DenseMatrix pauli_matrix(Pauli p) {
  const cplx i{0.0, 1.0};
  DenseMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

PauliString::PauliString(HilbertGeometry geometry, std::map<std::size_t, Pauli> factors)
    : geometry_(std::move(geometry)), factors_(std::move(factors)) {
  for (const auto& [site, p] : factors_) {
    if (site >= geometry_.n_sites()) throw std::out_of_range("PauliString: site out of range");
    if (geometry_.local_dim(site) != 2) {
      throw std::invalid_argument("PauliString: site " + std::to_string(site) + " is not a qubit");
    }
  }
  std::erase_if(factors_, [](const auto& kv) { return kv.second == Pauli::I; });
}

PauliString PauliString::single(HilbertGeometry geometry, std::size_t site, Pauli p) {
  return PauliString(std::move(geometry), {{site, p}});
}

PauliString PauliString::pair(HilbertGeometry geometry, std::size_t a, Pauli pa, std::size_t b,
                              Pauli pb) {
  if (a == b) throw std::invalid_argument("PauliString::pair: sites must differ");
  return PauliString(std::move(geometry), {{a, pa}, {b, pb}});
}

Operator materialize_pauli_string(const PauliString& p) {
  const HilbertGeometry& g = p.geometry();
  const std::size_t dim = g.dim();
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(dim);
  const cplx i{0.0, 1.0};
  for (std::size_t col = 0; col < dim; ++col) {
    cplx amp{1.0, 0.0};
    std::size_t row = col;
    for (const auto& [site, letter] : p.factors()) {
      const bool one = g.digit(col, site) == 1;
      switch (letter) {
        case Pauli::X: break;
        case Pauli::Y: amp *= one ? -i : i; break;
        case Pauli::Z: if (one) amp = -amp; break;
        case Pauli::I: break;
      }
      if (letter == Pauli::X || letter == Pauli::Y) {
        row = one ? row - g.stride(site) : row + g.stride(site);
      }
    }
    triplets.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), amp);
  }
  const auto d = static_cast<Eigen::Index>(dim);
  SparseMatrix m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return Operator(g, std::move(m));
}

Operator embed_local(const HilbertGeometry& geometry, std::size_t site, const DenseMatrix& local) {
  const std::size_t ld = geometry.local_dim(site);
  if (local.rows() != static_cast<Eigen::Index>(ld) || local.cols() != local.rows()) {
    throw GeometryMismatch("embed_local: local matrix does not match site dimension");
  }
  const std::size_t stride = geometry.stride(site);
  std::vector<Eigen::Triplet<cplx>> triplets;
  for (std::size_t col = 0; col < geometry.dim(); ++col) {
    const std::size_t c = geometry.digit(col, site);
    const std::size_t base = col - c * stride;
    for (std::size_t r = 0; r < ld; ++r) {
      const cplx v = local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v != cplx{0.0, 0.0}) {
        triplets.emplace_back(static_cast<Eigen::Index>(base + r * stride),
                              static_cast<Eigen::Index>(col), v);
      }
    }
  }
  const auto d = static_cast<Eigen::Index>(geometry.dim());
  SparseMatrix m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return Operator(geometry, std::move(m));
}

DenseMatrix ketbra(std::size_t dim, std::size_t row, std::size_t col) {
  if (row >= dim || col >= dim) throw std::out_of_range("ketbra: index out of range");
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return m;
}

DenseMatrix readout_sigma_z() { return ketbra(2, 1, 1) - ketbra(2, 0, 0); }

}  // namespace qmt::opcore
