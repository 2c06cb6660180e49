#pragma once

#include <filesystem>
#include <vector>

#include "qmt/bench/dataset.hpp"

namespace qmt::bench {

struct BoundEntry {
  std::string id;
  double t_min = 0.0;     ///< d / v, seconds
  double measured = 0.0;  ///< seconds
  double ratio = 0.0;     ///< measured / t_min
  bool pass = false;      ///< ratio >= 1
};

struct BoundReport {
  double velocity = 0.0;
  std::vector<BoundEntry> entries;
  bool all_pass = false;

  std::size_t passed() const noexcept;
};

inline constexpr double kDefaultVelocity = 1e5;  // m/s

/// Throws std::invalid_argument for an empty record list or v <= 0.
BoundReport check_bound(const std::vector<ExperimentRecord>& records, double v = kDefaultVelocity);

struct PlotFiles {
  std::filesystem::path data;
  std::filesystem::path bound_line;
  std::size_t data_rows = 0;
  std::size_t bound_rows = 0;
};

inline constexpr std::size_t kBoundLineSamples = 64;

/// Writes `out` with columns id,platform,diameter_m,time_s,note,bound_time_s
/// and a sibling <stem>_bound.csv with diameter_m,bound_time_s sampled
/// log-uniformly over the records' diameter range. Throws std::runtime_error
/// naming the path on I/O failure.
PlotFiles emit_plot_data(const std::vector<ExperimentRecord>& records, double v, const std::filesystem::path& out);

}  // namespace qmt::bench
