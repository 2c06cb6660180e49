#pragma once

#include <cstdint>

#include "qmt/opcore/operator.hpp"

namespace qmt::opcore {

struct SpectralNormOptions {
  /// Dense exact solver up to this dimension, power iteration above.
  std::size_t dense_max_dim = std::size_t{1} << 12;
  double relative_tolerance = 1e-8;
  std::size_t max_iterations = 20000;
  std::uint64_t seed = 0x5eed;
};

/// Largest singular value.
double spectral_norm(const Operator& a, const SpectralNormOptions& options = {});

/// Exact route: Hermitian and anti-Hermitian matrices go through the
/// self-adjoint eigensolver, everything else through a dense SVD.
double spectral_norm_dense(const DenseMatrix& a);

/// Power iteration on a^dagger a. Throws ConvergenceFailure at the cap.
double spectral_norm_power(const Operator& a, const SpectralNormOptions& options = {});

struct LanczosOptions {
  double relative_tolerance = 1e-13;
  Eigen::Index max_krylov = 120;
  std::uint64_t seed = 0x1a2c705;
};

/// Largest singular value of a (possibly rectangular) dense block, from
/// Lanczos on a^dagger a with full reorthogonalization. Deterministic for a
/// fixed seed.
double largest_singular_value(const Eigen::Ref<const DenseMatrix>& a,
                              const LanczosOptions& options = {});

}  // namespace qmt::opcore
