#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmt/opcore/operator.hpp"
#include "qmt/opcore/state.hpp"

namespace qmt::measure {

using opcore::DensityMatrix;
using opcore::HilbertGeometry;
using opcore::Operator;

struct Outcome {
  std::string label;
  Operator projector;
};

/// Complete set of orthogonal projectors {Pi(r)}.
///
/// Construction checks Hermiticity, Pi(r)Pi(s) = delta_rs Pi(r) and
/// sum_r Pi(r) = 1, each within 1e-10, and throws InvalidMeasurement.
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<Outcome> outcomes);

  /// {|0><0|, |1><1|} on a single qubit, labels "0" and "1".
  static ProjectiveMeasurement z_basis();
  /// {P, 1 - P} with labels "0" and "1".
  static ProjectiveMeasurement binary(const Operator& projector);
  /// One rank-one projector per computational basis state, labelled by digits.
  static ProjectiveMeasurement computational(const HilbertGeometry& geometry);

  const HilbertGeometry& geometry() const noexcept { return outcomes_.front().projector.geometry(); }
  std::size_t size() const noexcept { return outcomes_.size(); }
  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
  const Outcome& operator[](std::size_t r) const { return outcomes_.at(r); }
  /// Throws std::out_of_range for an unknown label.
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<Outcome> outcomes_;
};

/// Largest deviation from orthogonality and completeness, for diagnostics.
struct MeasurementDefects {
  double orthogonality = 0.0;
  double completeness = 0.0;
  double hermiticity = 0.0;
};
MeasurementDefects measurement_defects(const std::vector<Outcome>& outcomes);

/// p(r) = tr(Pi(r) rho), tiny negatives clamped to zero.
std::vector<double> born_probabilities(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// Pi(r) rho Pi(r) / p(r). Throws ZeroProbabilityOutcome when p(r) <= 1e-14.
DensityMatrix collapse(const DensityMatrix& rho, const ProjectiveMeasurement& m, std::size_t r);
DensityMatrix collapse(const DensityMatrix& rho, const ProjectiveMeasurement& m, const std::string& label);

/// sum_r Pi(r) rho Pi(r), the unconditional post-measurement state.
DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveMeasurement& m);

struct MeasurementOutcome {
  std::string label;
  double probability = 0.0;
  /// Unset for outcomes with p(r) <= 1e-14.
  std::optional<DensityMatrix> state;
};
std::vector<MeasurementOutcome> measure_all(const DensityMatrix& rho, const ProjectiveMeasurement& m);

}  // namespace qmt::measure
