#pragma once

#include <filesystem>
#include <ostream>

#include "qmt/lightcone/cone.hpp"

namespace qmt::lightcone {

/// Long format: site,time,commutator_norm, one row per grid cell.
void write_scan_csv(const ConeScan& scan, std::ostream& out);
void write_scan_csv(const ConeScan& scan, const std::filesystem::path& path);

/// site,distance,arrival_time with "nan" for sites never reached.
void write_arrivals_csv(const ArrivalTable& table, std::ostream& out);
void write_arrivals_csv(const ArrivalTable& table, const std::filesystem::path& path);

}  // namespace qmt::lightcone
