#include "qmt/bench/bound.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qmt/numfmt.hpp"
#include "qmt/speedlimit/physical.hpp"

namespace qmt::bench {

std::size_t BoundReport::passed() const noexcept {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.pass; }));
}

BoundReport check_bound(const std::vector<ExperimentRecord>& records, double v) {
  if (records.empty()) throw std::invalid_argument("check_bound: no records");
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("check_bound: velocity must be positive");
  BoundReport report;
  report.velocity = v;
  report.all_pass = true;
  for (const auto& r : records) {
    BoundEntry e;
    e.id = r.id;
    e.t_min = speedlimit::min_measurement_time(r.diameter_m, v);
    e.measured = r.time_s;
    e.ratio = r.time_s / e.t_min;
    e.pass = e.ratio >= 1.0;
    report.all_pass = report.all_pass && e.pass;
    report.entries.push_back(std::move(e));
  }
  return report;
}

PlotFiles emit_plot_data(const std::vector<ExperimentRecord>& records, double v, const std::filesystem::path& out) {
  const BoundReport report = check_bound(records, v);
  PlotFiles files;
  files.data = out;
  files.bound_line = out.parent_path() / (out.stem().string() + "_bound.csv");

  {
    std::ofstream f(files.data);
    if (!f) throw std::runtime_error("cannot open " + files.data.string() + " for writing");
    f << "id,platform,diameter_m,time_s,note,bound_time_s\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
      const auto& r = records[k];
      f << csv_field(r.id) << ',' << csv_field(r.platform) << ',' << format_number(r.diameter_m) << ','
        << format_number(r.time_s) << ',' << csv_field(r.note) << ',' << format_number(report.entries[k].t_min)
        << '\n';
      ++files.data_rows;
    }
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + files.data.string());
  }

  const auto [lo, hi] = std::minmax_element(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.diameter_m < b.diameter_m;
  });
  const double l0 = std::log10(lo->diameter_m);
  const double l1 = std::log10(hi->diameter_m);
  std::ofstream f(files.bound_line);
  if (!f) throw std::runtime_error("cannot open " + files.bound_line.string() + " for writing");
  f << "diameter_m,bound_time_s\n";
  for (std::size_t k = 0; k < kBoundLineSamples; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(kBoundLineSamples - 1);
    const double d = k + 1 == kBoundLineSamples ? hi->diameter_m
                     : k == 0                   ? lo->diameter_m
                                                : std::pow(10.0, l0 + frac * (l1 - l0));
    f << format_number(d) << ',' << format_number(speedlimit::min_measurement_time(d, v)) << '\n';
    ++files.bound_rows;
  }
  f.flush();
  if (!f) throw std::runtime_error("write failed for " + files.bound_line.string());
  return files;
}

}  // namespace qmt::bench
