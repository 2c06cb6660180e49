#pragma once

#include <string>

#include "qmt/measure/ancilla.hpp"

namespace qmt::measure {

/// JSON object with the protocol duration, readout and Born probabilities,
/// fidelities, distances and the reduced-state entries as [re, im] pairs.
std::string to_json(const AncillaProtocolResult& result, int indent = 2);

}  // namespace qmt::measure
