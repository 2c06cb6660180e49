#include "qmt/bench/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>

#include "qmt/numfmt.hpp"

namespace qmt::bench {
namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Splits CSV text into rows; quoted fields may contain commas, doubled
/// quotes and newlines.
std::vector<Row> split_csv(std::istream& in, const std::string& source) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;
  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    if (field_started || !row.fields.empty() || !field.empty()) end_field();
    const bool blank = row.fields.size() == 1 && row.fields.front().find_first_not_of(" \t\r") == std::string::npos;
    if (!row.fields.empty() && !blank) rows.push_back(std::move(row));
    row = Row{};
    row.line = line;
  };
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw DatasetError(source + ":" + std::to_string(row.line) + ": unterminated quoted field");
  end_row();
  return rows;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double positive_number(const std::string& text, const std::string& column, const std::string& where) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw DatasetError(where + ": " + column + " is not a number: '" + t + "'");
  }
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DatasetError(where + ": " + column + " must be positive, got " + t);
  }
  return v;
}

}  // namespace

std::vector<ExperimentRecord> builtin_dataset() {
  return {
      {"qd-spin-readout", "quantum-dot electron spin readout", 1e-7, 8e-6,
       "Elzerman et al., Nature 2004; dot size roughly 100 nm, readout 8 us"},
      {"qd-qnd", "quantum-dot QND measurement with a double-dot ancilla", 1e-7, 2.33e-9,
       "Nakajima et al., Nat. Nanotechnol. 2019; tau_1 = 2.33 ns; size not reported, 100 nm taken from the "
       "similar dot of qd-spin-readout"},
      {"bec-zeno", "Rb Bose-Einstein condensate, quantum Zeno dynamics", 7e-5, 1.4e-6,
       "Schaefer et al., Nat. Commun. 2014; laser waist 70 um; 0.8 us pi-pulse + 0.6 us illumination"},
      {"transmon-a", "superconducting transmon, projective readout", 1e-3, 4e-7,
       "Riste et al., PRL 2012; 400 ns microwave pulse; size 1 mm after Paik et al., PRL 2011"},
      {"al-ion", "single Al+ ion, Be+ ancilla-assisted readout", 2.86e-10, 2.5e-5,
       "Hume, Rosenband, Wineland, PRL 2007; 25 us interaction; diameter = 2 x 143 pm Al atomic radius"},
      {"lattice-clock", "optical lattice clock, Rabi spectroscopy", 4e-2, 1.6e-1,
       "Nicholson et al., PRL 2012; 160 ms probe; 813 nm lattice constant x 50000 atoms"},
      {"transmon-b", "superconducting transmon, projective readout", 1e-3, 3.5e-7,
       "Monroe et al., arXiv 2020; 350 ns readout; size 1 mm as for transmon-a"},
  };
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_dataset_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << "id,platform,diameter_m,time_s,note\n";
  for (const auto& r : records) {
    out << csv_field(r.id) << ',' << csv_field(r.platform) << ',' << format_number(r.diameter_m) << ','
        << format_number(r.time_s) << ',' << csv_field(r.note) << '\n';
  }
}

DatasetLoad parse_dataset(std::istream& in, const std::string& source_name) {
  const std::vector<Row> rows = split_csv(in, source_name);
  if (rows.empty()) throw DatasetError(source_name + ": empty dataset (no header)");

  DatasetLoad load;
  std::map<std::string, std::size_t> column;
  const Row& header = rows.front();
  for (std::size_t c = 0; c < header.fields.size(); ++c) {
    const std::string name = trim(header.fields[c]);
    if (!column.emplace(name, c).second) {
      throw DatasetError(source_name + ":" + std::to_string(header.line) + ": duplicate column '" + name + "'");
    }
    if (name != "id" && name != "platform" && name != "diameter_m" && name != "time_s" && name != "note") {
      load.warnings.push_back(source_name + ": ignoring unknown column '" + name + "'");
    }
  }
  for (const char* required : {"id", "diameter_m", "time_s"}) {
    if (!column.count(required)) {
      throw DatasetError(source_name + ":" + std::to_string(header.line) + ": missing column '" + required + "'");
    }
  }
  auto optional_col = [&](const char* name) -> std::optional<std::size_t> {
    const auto it = column.find(name);
    return it == column.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  };
  const auto platform = optional_col("platform");
  const auto note = optional_col("note");

  for (std::size_t k = 1; k < rows.size(); ++k) {
    const Row& row = rows[k];
    const std::string where = source_name + ":" + std::to_string(row.line);
    if (row.fields.size() != header.fields.size()) {
      throw DatasetError(where + ": expected " + std::to_string(header.fields.size()) + " fields, found " +
                         std::to_string(row.fields.size()));
    }
    ExperimentRecord r;
    r.id = trim(row.fields[column.at("id")]);
    if (r.id.empty()) throw DatasetError(where + ": empty id");
    if (platform) r.platform = row.fields[*platform];
    r.diameter_m = positive_number(row.fields[column.at("diameter_m")], "diameter_m", where);
    r.time_s = positive_number(row.fields[column.at("time_s")], "time_s", where);
    if (note) r.note = row.fields[*note];
    load.records.push_back(std::move(r));
  }
  return load;
}

DatasetLoad load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  return parse_dataset(in, path.string());
}

}  // namespace qmt::bench
