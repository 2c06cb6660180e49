#pragma once

#include <map>
#include <optional>

#include "qmt/opcore/operator.hpp"

namespace qmt::opcore {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

std::optional<Pauli> parse_pauli(char letter) noexcept;
char to_char(Pauli p) noexcept;

/// Standard Pauli matrix; Z = diag(1, -1) so Z|0> = |0>.
DenseMatrix pauli_matrix(Pauli p);

/// Product of single-site Paulis; unlisted sites carry the identity.
class PauliString {
 public:
  explicit PauliString(HilbertGeometry geometry, std::map<std::size_t, Pauli> factors = {});

  static PauliString single(HilbertGeometry geometry, std::size_t site, Pauli p);
  static PauliString pair(HilbertGeometry geometry, std::size_t a, Pauli pa, std::size_t b, Pauli pb);

  const HilbertGeometry& geometry() const noexcept { return geometry_; }
  const std::map<std::size_t, Pauli>& factors() const noexcept { return factors_; }

 private:
  HilbertGeometry geometry_;
  std::map<std::size_t, Pauli> factors_;
};

/// Explicit dim x dim matrix of the string (one nonzero per column).
Operator materialize_pauli_string(const PauliString& p);

/// Embeds a local_dim x local_dim matrix acting on `site`.
Operator embed_local(const HilbertGeometry& geometry, std::size_t site, const DenseMatrix& local);

/// |row><col| on a single site of dimension `dim`.
DenseMatrix ketbra(std::size_t dim, std::size_t row, std::size_t col);

/// Readout observable |1><1| - |0><0| of the binary z-measurement. It is the
/// negative of pauli_matrix(Pauli::Z).
DenseMatrix readout_sigma_z();

}  // namespace qmt::opcore
