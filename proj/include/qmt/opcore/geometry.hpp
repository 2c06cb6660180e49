#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qmt::opcore {

inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 14;

/// Tensor-product layout of a finite Hilbert space.
///
/// Site 0 is the leftmost tensor factor, so a basis index reads site-0-major:
/// for two qubits the ordered basis is |00>, |01>, |10>, |11>. Sites are
/// qubits unless a local dimension is given explicitly (the ancilla register
/// of an n-outcome measurement is an n-level site).
class HilbertGeometry {
 public:
  static HilbertGeometry qubits(std::size_t n_sites, std::size_t max_dim = kDefaultMaxDim);

  explicit HilbertGeometry(std::vector<std::size_t> local_dims,
                           std::size_t max_dim = kDefaultMaxDim);

  std::size_t n_sites() const noexcept { return local_dims_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t max_dim() const noexcept { return max_dim_; }
  std::size_t local_dim(std::size_t site) const;
  const std::vector<std::size_t>& local_dims() const noexcept { return local_dims_; }
  bool all_qubits() const noexcept;

  /// Index increment for a unit step of the digit on `site`.
  std::size_t stride(std::size_t site) const;

  /// Digit of basis state `index` on `site`.
  std::size_t digit(std::size_t index, std::size_t site) const;

  /// Geometry of this (left) tensored with `right`. Throws DimensionOverflow.
  HilbertGeometry compose(const HilbertGeometry& right) const;

  /// Geometry of the listed sites, in the listed order.
  HilbertGeometry subsystem(std::span<const std::size_t> sites) const;

  std::string describe() const;

  friend bool operator==(const HilbertGeometry& a, const HilbertGeometry& b) noexcept {
    return a.local_dims_ == b.local_dims_;
  }

 private:
  std::vector<std::size_t> local_dims_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
  std::size_t max_dim_ = kDefaultMaxDim;
};

/// Throws GeometryMismatch naming `context` when the spaces differ.
void require_same_geometry(const HilbertGeometry& a, const HilbertGeometry& b,
                           const char* context);

}  // namespace qmt::opcore
