#include "qmt/lightcone/export.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "qmt/numfmt.hpp"

namespace qmt::lightcone {
namespace {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void write_scan_csv(const ConeScan& scan, std::ostream& out) {
  out << "site,time,commutator_norm\n";
  for (std::size_t j = 0; j < scan.n_sites(); ++j) {
    for (std::size_t k = 0; k < scan.times.size(); ++k) {
      out << j << ',' << format_number(scan.times[k]) << ','
          << format_number(scan.norms(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))) << '\n';
    }
  }
}

void write_scan_csv(const ConeScan& scan, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_scan_csv(scan, out); });
}

void write_arrivals_csv(const ArrivalTable& table, std::ostream& out) {
  out << "site,distance,arrival_time\n";
  for (std::size_t j = 0; j < table.arrival.size(); ++j) {
    const double t = table.arrival[j] ? *table.arrival[j] : std::numeric_limits<double>::quiet_NaN();
    out << j << ',' << format_number(table.distance[j]) << ',' << format_number(t) << '\n';
  }
}

void write_arrivals_csv(const ArrivalTable& table, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_arrivals_csv(table, out); });
}

}  // namespace qmt::lightcone
