#pragma once

#include <stdexcept>

namespace qmt {

/// Operands live on different Hilbert spaces.
class GeometryMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A composite space would exceed the configured dimension cap.
class DimensionOverflow : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotUnitary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Amplitudes or density matrix entries violate normalization/positivity.
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Projector set is not orthogonal, complete, or Hermitian.
class InvalidMeasurement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Conditioning on an outcome that has (numerically) zero probability.
class ZeroProbabilityOutcome : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solver hit its iteration cap.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmt
