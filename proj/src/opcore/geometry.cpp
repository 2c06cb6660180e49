#include "qmt/opcore/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "qmt/errors.hpp"

namespace qmt::opcore {

HilbertGeometry HilbertGeometry::qubits(std::size_t n_sites, std::size_t max_dim) {
  return HilbertGeometry(std::vector<std::size_t>(n_sites, 2), max_dim);
}

HilbertGeometry::HilbertGeometry(std::vector<std::size_t> local_dims, std::size_t max_dim)
    : local_dims_(std::move(local_dims)), max_dim_(max_dim) {
  if (local_dims_.empty()) {
    throw std::invalid_argument("HilbertGeometry: at least one site is required");
  }
  dim_ = 1;
  for (std::size_t d : local_dims_) {
    if (d < 2) {
      throw std::invalid_argument("HilbertGeometry: local dimension must be >= 2");
    }
    if (dim_ > max_dim_ / d) {
      throw DimensionOverflow("HilbertGeometry: dimension exceeds configured maximum " +
                              std::to_string(max_dim_));
    }
    dim_ *= d;
  }
  strides_.assign(local_dims_.size(), 1);
  for (std::size_t s = local_dims_.size() - 1; s > 0; --s) {
    strides_[s - 1] = strides_[s] * local_dims_[s];
  }
}

std::size_t HilbertGeometry::local_dim(std::size_t site) const {
  if (site >= local_dims_.size()) throw std::out_of_range("HilbertGeometry: site out of range");
  return local_dims_[site];
}

bool HilbertGeometry::all_qubits() const noexcept {
  return std::all_of(local_dims_.begin(), local_dims_.end(), [](std::size_t d) { return d == 2; });
}

std::size_t HilbertGeometry::stride(std::size_t site) const {
  if (site >= strides_.size()) throw std::out_of_range("HilbertGeometry: site out of range");
  return strides_[site];
}

std::size_t HilbertGeometry::digit(std::size_t index, std::size_t site) const {
  return (index / stride(site)) % local_dims_[site];
}

HilbertGeometry HilbertGeometry::compose(const HilbertGeometry& right) const {
  std::vector<std::size_t> dims = local_dims_;
  dims.insert(dims.end(), right.local_dims_.begin(), right.local_dims_.end());
  return HilbertGeometry(std::move(dims), std::max(max_dim_, right.max_dim_));
}

HilbertGeometry HilbertGeometry::subsystem(std::span<const std::size_t> sites) const {
  std::vector<std::size_t> dims;
  dims.reserve(sites.size());
  for (std::size_t s : sites) dims.push_back(local_dim(s));
  return HilbertGeometry(std::move(dims), max_dim_);
}

std::string HilbertGeometry::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < local_dims_.size(); ++i) os << (i ? "x" : "") << local_dims_[i];
  os << "] dim " << dim_;
  return os.str();
}

void require_same_geometry(const HilbertGeometry& a, const HilbertGeometry& b,
                           const char* context) {
  if (!(a == b)) {
    throw GeometryMismatch(std::string(context) + ": geometry " + a.describe() + " vs " +
                           b.describe());
  }
}

}  // namespace qmt::opcore
