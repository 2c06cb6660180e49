#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmt::bench {

struct ExperimentRecord {
  std::string id;
  std::string platform;
  double diameter_m = 0.0;
  double time_s = 0.0;
  std::string note;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// The seven published measurement-time data points (object diameter and
/// readout duration, SI units).
std::vector<ExperimentRecord> builtin_dataset();

/// Malformed dataset content; the message carries the line number.
class DatasetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DatasetLoad {
  std::vector<ExperimentRecord> records;
  std::vector<std::string> warnings;
};

/// Reads CSV with a header naming at least id, diameter_m and time_s;
/// platform and note are optional, other columns are ignored with a warning.
/// Fields may be double-quoted. Throws std::runtime_error for a missing file
/// and DatasetError for bad rows or non-positive numbers.
DatasetLoad load_dataset(const std::filesystem::path& path);
DatasetLoad parse_dataset(std::istream& in, const std::string& source_name = "<stream>");

/// Header id,platform,diameter_m,time_s,note; numbers in shortest
/// round-trip form.
void write_dataset_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);

/// RFC 4180 style quoting when the field holds a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace qmt::bench
