#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmt/bench/bound.hpp"
#include "qmt/bench/cli.hpp"
#include "qmt/bench/dataset.hpp"

using namespace qmt::bench;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qmt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qmt_bench_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const BoundEntry& entry(const BoundReport& r, const std::string& id) {
  for (const auto& e : r.entries)
    if (e.id == id) return e;
  throw std::out_of_range(id);
}

}  // namespace

TEST(Dataset, BuiltinHasSevenPositiveRecords) {
  const auto records = builtin_dataset();
  EXPECT_EQ(records.size(), 7u);
  for (const auto& r : records) {
    EXPECT_GT(r.diameter_m, 0.0);
    EXPECT_GT(r.time_s, 0.0);
    EXPECT_FALSE(r.id.empty());
  }
}

TEST(Dataset, RoundTripsThroughCsv) {
  std::stringstream s;
  write_dataset_csv(builtin_dataset(), s);
  const auto back = parse_dataset(s);
  EXPECT_EQ(back.records, builtin_dataset());
  EXPECT_TRUE(back.warnings.empty());
}

TEST(Dataset, QuotedFieldsSurvive) {
  std::vector<ExperimentRecord> rec{{"odd,id", "a \"quoted\" platform", 1e-6, 2e-3, "line\nbreak"}};
  std::stringstream s;
  write_dataset_csv(rec, s);
  EXPECT_EQ(parse_dataset(s).records, rec);
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
}

TEST(Dataset, NonPositiveDiameterIsRejectedWithLineNumber) {
  std::istringstream in("id,diameter_m,time_s\nok,1e-9,1e-6\nbad,0,1e-6\n");
  try {
    parse_dataset(in, "data.csv");
    FAIL() << "expected DatasetError";
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("data.csv"), std::string::npos) << e.what();
  }
}

TEST(Dataset, MalformedInputs) {
  std::istringstream missing("id,time_s\nx,1\n");
  EXPECT_THROW(parse_dataset(missing), DatasetError);
  std::istringstream ragged("id,diameter_m,time_s\nx,1\n");
  EXPECT_THROW(parse_dataset(ragged), DatasetError);
  std::istringstream text("id,diameter_m,time_s\nx,one,1\n");
  EXPECT_THROW(parse_dataset(text), DatasetError);
  std::istringstream inf("id,diameter_m,time_s\nx,inf,1\n");
  EXPECT_THROW(parse_dataset(inf), DatasetError);
  EXPECT_THROW(load_dataset("/nonexistent/data.csv"), std::runtime_error);
}

TEST(Dataset, UnknownColumnsWarn) {
  std::istringstream in("id,diameter_m,time_s,colour\nx,1e-9,1e-6,red\n");
  const auto load = parse_dataset(in);
  ASSERT_EQ(load.records.size(), 1u);
  ASSERT_EQ(load.warnings.size(), 1u);
  EXPECT_NE(load.warnings[0].find("colour"), std::string::npos);
}

TEST(Bound, BuiltinDatasetNeverViolates) {
  const auto r = check_bound(builtin_dataset());
  EXPECT_TRUE(r.all_pass);
  EXPECT_EQ(r.passed(), 7u);
  EXPECT_EQ(r.velocity, 1e5);
}

TEST(Bound, WorkedRecords) {
  const auto r = check_bound(builtin_dataset());
  const auto& qnd = entry(r, "qd-qnd");
  EXPECT_NEAR(qnd.t_min, 1e-12, 1e-24);
  EXPECT_NEAR(qnd.ratio, 2330.0, 1e-9 * 2330.0);
  const auto& clock = entry(r, "lattice-clock");
  EXPECT_NEAR(clock.t_min, 4e-7, 1e-19);
  EXPECT_TRUE(clock.pass);
}

TEST(Bound, ConstructedViolation) {
  const auto r = check_bound({{"fast", "", 1.0, 1e-6, ""}}, 1e5);
  EXPECT_FALSE(r.all_pass);
  EXPECT_NEAR(r.entries[0].t_min, 1e-5, 1e-20);
  EXPECT_FALSE(r.entries[0].pass);
  EXPECT_THROW(check_bound({}, 1e5), std::invalid_argument);
  EXPECT_THROW(check_bound(builtin_dataset(), 0.0), std::invalid_argument);
}

TEST(Plot, EmitsDataAndBoundLine) {
  const auto files = emit_plot_data(builtin_dataset(), 1e5, scratch("plot.csv"));
  EXPECT_EQ(files.data_rows, 7u);
  EXPECT_GE(files.bound_rows, 50u);
  EXPECT_EQ(files.bound_line.filename(), "plot_bound.csv");
  // The data file is itself a loadable dataset.
  const auto load = load_dataset(files.data);
  EXPECT_EQ(load.records, builtin_dataset());
  std::ifstream bound(files.bound_line);
  std::string header;
  std::getline(bound, header);
  EXPECT_EQ(header, "diameter_m,bound_time_s");
}

TEST(Cli, EstimatePrintsBothVelocities) {
  const auto r = cli({"estimate", "--diameter", "1", "--charge-s", "e", "--charge-a", "e"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("6.954e+05"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("1e-05"), std::string::npos) << r.out;
}

TEST(Cli, BoundCheckExitCodes) {
  EXPECT_EQ(cli({"bound-check"}).code, 0);
  const auto bad = scratch("violating.csv");
  write_file(bad, "id,diameter_m,time_s\nfast,1,1e-6\n");
  const auto r = cli({"bound-check", "--dataset", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("0/1 pass"), std::string::npos) << r.out;
}

TEST(Cli, MeasureSimReadout) {
  const auto r = cli({"measure-sim", "--alpha", "0.6", "--beta", "0.8", "--g", "1", "--t", "3.141592653589793"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.36"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.64"), std::string::npos) << r.out;
}

TEST(Cli, MeasureSimModes) {
  const auto base = std::vector<std::string>{"measure-sim", "--alpha", "0.6", "--beta", "0.8", "--json", "--mode"};
  auto with = [&](const std::string& m) {
    auto args = base;
    args.push_back(m);
    return cli(args);
  };
  const auto coupling = with("coupling");
  EXPECT_EQ(coupling.code, 0) << coupling.err;
  EXPECT_EQ(with("eq7").out, coupling.out);
  EXPECT_EQ(with("exact").code, 0);
  EXPECT_EQ(with("ideal").code, 2);
}

TEST(Cli, QslFromSpecFile) {
  const auto spec = scratch("h.json");
  write_file(spec, R"({"type":"measurement","g":2})");
  const auto r = cli({"qsl", "--hamiltonian", spec.string(), "--state", "10", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"tau_mt\": 1.5707963267948"), std::string::npos) << r.out;
  const auto frozen = cli({"qsl", "--hamiltonian", spec.string(), "--state", "00", "--json"});
  EXPECT_NE(frozen.out.find("\"tau_mt\": null"), std::string::npos) << frozen.out;
}

TEST(Cli, LightconeSmallChain) {
  const auto csv = scratch("cone.csv");
  const auto r = cli({"lightcone", "--n", "5", "--tmax", "3", "--csv", csv.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("v_I"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(csv));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"estimate"}).code, 2);
  EXPECT_EQ(cli({"estimate", "--diameter", "1", "--bogus"}).code, 2);
  EXPECT_EQ(cli({"estimate", "--diameter", "-1"}).code, 2);
  EXPECT_EQ(cli({"estimate", "--diameter", "1", "--charge-s", "electron"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, RuntimeErrorsExitOne) {
  EXPECT_EQ(cli({"lightcone", "--n", "4", "--eps", "3"}).code, 1);
  EXPECT_EQ(cli({"lightcone", "--n", "20"}).code, 1);
}
