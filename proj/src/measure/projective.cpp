#include "qmt/measure/projective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmt/errors.hpp"
#include "qmt/opcore/pauli.hpp"

namespace qmt::measure {
namespace {

constexpr double kMeasurementTol = 1e-10;
constexpr double kZeroProbability = 1e-14;

opcore::DenseMatrix symmetrized(const opcore::DenseMatrix& m) {
  return 0.5 * (m + opcore::DenseMatrix(m.adjoint()));
}

}  // namespace

MeasurementDefects measurement_defects(const std::vector<Outcome>& outcomes) {
  MeasurementDefects d;
  if (outcomes.empty()) return d;
  const HilbertGeometry& g = outcomes.front().projector.geometry();
  Operator sum = Operator::zero(g);
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const Operator& p = outcomes[r].projector;
    d.hermiticity = std::max(d.hermiticity, opcore::max_abs_difference(p, p.adjoint()));
    for (std::size_t s = r; s < outcomes.size(); ++s) {
      const Operator prod = p * outcomes[s].projector;
      const double dev = r == s ? opcore::max_abs_difference(prod, p) : prod.max_abs();
      d.orthogonality = std::max(d.orthogonality, dev);
    }
    sum = sum + p;
  }
  d.completeness = opcore::max_abs_difference(sum, Operator::identity(g));
  return d;
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvalidMeasurement("ProjectiveMeasurement: no outcomes");
  for (std::size_t r = 0; r < outcomes_.size(); ++r) {
    opcore::require_same_geometry(outcomes_.front().projector.geometry(), outcomes_[r].projector.geometry(),
                                  "ProjectiveMeasurement");
    for (std::size_t s = 0; s < r; ++s) {
      if (outcomes_[s].label == outcomes_[r].label) {
        throw InvalidMeasurement("ProjectiveMeasurement: duplicate label '" + outcomes_[r].label + "'");
      }
    }
  }
  const MeasurementDefects d = measurement_defects(outcomes_);
  if (d.hermiticity > kMeasurementTol) throw InvalidMeasurement("ProjectiveMeasurement: projector not Hermitian");
  if (d.orthogonality > kMeasurementTol) {
    throw InvalidMeasurement("ProjectiveMeasurement: projectors not orthogonal idempotents (defect " +
                             std::to_string(d.orthogonality) + ")");
  }
  if (d.completeness > kMeasurementTol) {
    throw InvalidMeasurement("ProjectiveMeasurement: projectors do not sum to the identity (defect " +
                             std::to_string(d.completeness) + ")");
  }
}

ProjectiveMeasurement ProjectiveMeasurement::z_basis() {
  const auto g = HilbertGeometry::qubits(1);
  return ProjectiveMeasurement({{"0", Operator(g, opcore::ketbra(2, 0, 0))},
                                {"1", Operator(g, opcore::ketbra(2, 1, 1))}});
}

ProjectiveMeasurement ProjectiveMeasurement::binary(const Operator& projector) {
  return ProjectiveMeasurement(
      {{"0", projector}, {"1", Operator::identity(projector.geometry()) - projector}});
}

ProjectiveMeasurement ProjectiveMeasurement::computational(const HilbertGeometry& geometry) {
  std::vector<Outcome> out;
  const auto dim = static_cast<Eigen::Index>(geometry.dim());
  for (std::size_t i = 0; i < geometry.dim(); ++i) {
    std::string label;
    for (std::size_t s = 0; s < geometry.n_sites(); ++s) label += std::to_string(geometry.digit(i, s));
    opcore::SparseMatrix p(dim, dim);
    p.insert(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    out.push_back({std::move(label), Operator(geometry, std::move(p))});
  }
  return ProjectiveMeasurement(std::move(out));
}

std::size_t ProjectiveMeasurement::index_of(const std::string& label) const {
  for (std::size_t r = 0; r < outcomes_.size(); ++r) {
    if (outcomes_[r].label == label) return r;
  }
  throw std::out_of_range("ProjectiveMeasurement: unknown outcome '" + label + "'");
}

std::vector<double> born_probabilities(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  opcore::require_same_geometry(rho.geometry(), m.geometry(), "born_probabilities");
  std::vector<double> p;
  p.reserve(m.size());
  for (const auto& o : m.outcomes()) {
    const opcore::DenseMatrix pr = o.projector.dense();
    p.push_back(std::max(0.0, (pr.array() * rho.matrix().transpose().array()).sum().real()));
  }
  return p;
}

DensityMatrix collapse(const DensityMatrix& rho, const ProjectiveMeasurement& m, std::size_t r) {
  opcore::require_same_geometry(rho.geometry(), m.geometry(), "collapse");
  const opcore::DenseMatrix pr = m[r].projector.dense();
  const opcore::DenseMatrix num = pr * rho.matrix() * pr;
  const double p = num.trace().real();
  if (!(p > kZeroProbability)) {
    throw ZeroProbabilityOutcome("collapse: outcome '" + m[r].label + "' has probability " + std::to_string(p));
  }
  return DensityMatrix(rho.geometry(), symmetrized(num / p));
}

DensityMatrix collapse(const DensityMatrix& rho, const ProjectiveMeasurement& m, const std::string& label) {
  return collapse(rho, m, m.index_of(label));
}

DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  opcore::require_same_geometry(rho.geometry(), m.geometry(), "dephase");
  opcore::DenseMatrix acc = opcore::DenseMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& o : m.outcomes()) {
    const opcore::DenseMatrix pr = o.projector.dense();
    acc += pr * rho.matrix() * pr;
  }
  return DensityMatrix(rho.geometry(), symmetrized(acc));
}

std::vector<MeasurementOutcome> measure_all(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  const auto p = born_probabilities(rho, m);
  std::vector<MeasurementOutcome> out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    MeasurementOutcome o{m[r].label, p[r], std::nullopt};
    if (p[r] > kZeroProbability) o.state = collapse(rho, m, r);
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace qmt::measure
