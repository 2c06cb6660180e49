#include "qmt/measure/serialize.hpp"

#include <json.hpp>

namespace qmt::measure {
namespace {

nlohmann::json matrix_json(const opcore::DenseMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_json(const opcore::Vector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

}  // namespace

std::string to_json(const AncillaProtocolResult& result, int indent) {
  nlohmann::json j;
  j["duration"] = result.duration;
  j["readout"] = result.readout;
  j["born"] = result.born;
  j["unitary_fidelity"] = result.unitary_fidelity;
  j["dephasing_distance"] = result.dephasing_distance;
  j["joint_phase_distance"] = result.joint_phase_distance;
  j["joint"] = vector_json(result.joint.amplitudes());
  j["reduced_system"] = matrix_json(result.reduced_system.matrix());
  auto conditional = nlohmann::json::array();
  for (const auto& c : result.conditional_states) {
    conditional.push_back(c ? matrix_json(c->matrix()) : nlohmann::json());
  }
  j["conditional_states"] = std::move(conditional);
  return j.dump(indent);
}

}  // namespace qmt::measure
