#pragma once

#include <span>
#include <vector>

#include "qmt/opcore/operator.hpp"
#include "qmt/opcore/state.hpp"

namespace qmt::opcore {

/// Kronecker product; the result's sites are a's sites followed by b's.
Operator tensor_product(const Operator& a, const Operator& b);

/// ab - ba.
Operator commutator(const Operator& a, const Operator& b);

/// <psi|A|psi> for Hermitian A. Throws NotHermitian, GeometryMismatch.
double expectation(const StateVector& psi, const Operator& a);

/// <A^2> - <A>^2, clamped at zero.
double variance(const StateVector& psi, const Operator& a);

/// Reduced state on `keep` (site indices, any order, kept in ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// u^dagger a u. Throws NotUnitary when ||u^dagger u - 1|| >= 1e-10.
Operator heisenberg_evolve(const Operator& a, const Operator& u);

/// ||u^dagger u - 1|| in the spectral norm.
double unitarity_defect(const Operator& u);
double unitarity_defect(const DenseMatrix& u);

/// |tr(u^dagger v)| / dim, invariant under global phase of either argument.
double hs_fidelity(const Operator& u, const Operator& v);

/// ||u - e^{i phi} v|| with phi chosen to align the largest-magnitude entry of v.
double phase_aligned_distance(const Operator& u, const Operator& v);

}  // namespace qmt::opcore
