#pragma once

#include <vector>

#include "qmt/opcore/operator.hpp"

namespace qmt::evolve {

using opcore::Operator;

/// (e^{-ix t/steps} e^{-iy t/steps})^steps, the first-order product formula.
/// Throws NotHermitian, GeometryMismatch, std::invalid_argument for steps == 0.
Operator trotter_evolve(const Operator& x, const Operator& y, double t, std::size_t steps);

/// Truncated Zassenhaus product for exp(t(X' + Y')) with X' = -ix, Y' = -iy:
///   order 1: e^{tX'} e^{tY'}
///   order 2: ... e^{-(t^2/2)[X',Y']}
///   order 3: ... e^{(t^3/6)(2[Y',[X',Y']] + [X',[X',Y']])}
/// Throws std::invalid_argument for other orders.
Operator zassenhaus_truncated(const Operator& x, const Operator& y, double t, int order);

/// Exact exp(-i(x + y)t) from a dense eigendecomposition.
Operator exact_evolution(const Operator& x, const Operator& y, double t);

struct ReachabilityReport {
  /// Entry k - 1 is the largest norm among depth-k brackets
  /// [z_k, [..., [z_2, [x, y]]]] with each z in {x, y}; entry 0 is ||[x, y]||.
  std::vector<double> nested_norms;
  /// Dimension of the real span of {x, y} and all brackets up to `depth`
  /// (as Hermitian generators), plus the identity.
  std::size_t span_rank = 0;
  /// ||G - P G|| / ||G|| (Frobenius) for G = i log(target), P the projection
  /// onto that span. Zero means the target's generator lies in the span; this
  /// says nothing about whether a pulse sequence reaches it at finite depth.
  double generator_residual = 0.0;
};

/// Nested-commutator diagnostic for the control pair (x, y). Throws
/// NotUnitary for a non-unitary target, std::invalid_argument for depth 0.
ReachabilityReport reachability_probe(const Operator& x, const Operator& y, const Operator& target,
                                      std::size_t depth);

}  // namespace qmt::evolve
