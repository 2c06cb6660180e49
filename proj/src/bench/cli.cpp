#include "qmt/bench/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <regex>

#include "qmt/bench/bound.hpp"
#include "qmt/lightcone/cone.hpp"
#include "qmt/lightcone/export.hpp"
#include "qmt/measure/ancilla.hpp"
#include "qmt/measure/serialize.hpp"
#include "qmt/models/hamiltonian_spec.hpp"
#include "qmt/numfmt.hpp"
#include "qmt/opcore/algebra.hpp"
#include "qmt/speedlimit/physical.hpp"
#include "qmt/speedlimit/qsl.hpp"

namespace qmt::bench {
namespace {

using speedlimit::PhysicalConstants;

/// CLI-level bad input detected after parsing; reported like a usage error.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw UsageError(what + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

/// "e", "2e", "-e", "e/10", "0.5*e" in elementary charges, or coulombs.
double parse_charge(const std::string& text) {
  static const std::regex elementary(R"(^\s*([+-]?(?:[0-9]*\.?[0-9]+)?)\s*\*?\s*e\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, elementary)) {
    double factor = 1.0;
    const std::string f = m[1].str();
    if (f == "-") factor = -1.0;
    else if (!f.empty() && f != "+") factor = parse_real(f[0] == '+' ? f.substr(1) : f, "charge");
    if (m[2].matched) factor /= parse_real(m[2].str(), "charge");
    return factor * PhysicalConstants::e;
  }
  return parse_real(text, "charge");
}

/// "0.6", "0.6+0.8i", "-i", "2.5e-1-1e-2i".
opcore::cplx parse_amplitude(std::string t) {
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t.empty()) throw UsageError("empty amplitude");
  if (t.back() != 'i' && t.back() != 'j') return {parse_real(t, "amplitude"), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s[0] == '+' ? s.substr(1) : s, "amplitude");
  };
  if (split == std::string::npos) return {0.0, imag_part(t)};
  return {parse_real(t.substr(0, split), "amplitude"), imag_part(t.substr(split))};
}

opcore::Vector parse_amplitudes(const std::string& list) {
  std::vector<opcore::cplx> amps;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) amps.push_back(parse_amplitude(tok));
  opcore::Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) v(static_cast<Eigen::Index>(k)) = amps[k];
  return v;
}

opcore::StateVector normalized_state(const opcore::HilbertGeometry& g, const opcore::Vector& v, std::ostream& err) {
  if (static_cast<std::size_t>(v.size()) != g.dim()) {
    throw UsageError("state has " + std::to_string(v.size()) + " amplitudes, the space has dimension " +
                     std::to_string(g.dim()));
  }
  if (std::abs(v.norm() - 1.0) > opcore::kStateTol) {
    err << "note: amplitudes renormalized (norm was " << format_sig(v.norm(), 8) << ")\n";
  }
  return opcore::StateVector::normalized(g, v);
}

opcore::Pauli parse_pauli_flag(const std::string& s) {
  const auto p = s.size() == 1 ? opcore::parse_pauli(static_cast<char>(std::toupper(s[0]))) : std::nullopt;
  if (!p || *p == opcore::Pauli::I) throw UsageError("Pauli observable must be X, Y or Z, got '" + s + "'");
  return *p;
}

std::vector<ExperimentRecord> dataset_or_builtin(const std::string& path, std::ostream& err) {
  if (path.empty()) return builtin_dataset();
  DatasetLoad load = load_dataset(path);
  for (const auto& w : load.warnings) err << "warning: " << w << '\n';
  return load.records;
}

struct EstimateArgs {
  double diameter = 0.0;
  std::string charge_s = "e";
  std::string charge_a = "e";
  std::optional<double> velocity;
  bool light = false;
  std::optional<double> mass;
  std::optional<double> temperature;
  double factor = 100.0;
};

int run_estimate(const EstimateArgs& a, std::ostream& out) {
  const double qs = parse_charge(a.charge_s);
  const double qa = parse_charge(a.charge_a);
  const double ve = speedlimit::energetic_velocity(qs, qa);
  out << "diameter            " << format_sig(a.diameter) << " m\n";
  out << "charges             " << format_sig(qs) << " C, " << format_sig(qa) << " C\n";
  out << "v_E = k_e qS qA/(hbar pi)  " << format_sig(ve) << " m/s\n";
  out << "t_min at v_E        " << format_sig(speedlimit::min_measurement_time(a.diameter, ve)) << " s\n";
  out << "v (round 1e5)       " << format_sig(PhysicalConstants::coulomb_velocity) << " m/s\n";
  out << "t_min at 1e5 m/s    "
      << format_sig(speedlimit::min_measurement_time(a.diameter, PhysicalConstants::coulomb_velocity)) << " s\n";
  if (a.velocity) {
    out << "t_min at " << format_sig(*a.velocity) << " m/s  "
        << format_sig(speedlimit::min_measurement_time(a.diameter, *a.velocity)) << " s\n";
  }
  if (a.light) {
    out << "t_min at c          " << format_sig(speedlimit::min_measurement_time(a.diameter, PhysicalConstants::c))
        << " s\n";
  }
  if (a.mass || a.temperature) {
    speedlimit::ThermalParams tp;
    if (a.mass) tp.mass = *a.mass;
    if (a.temperature) tp.temperature = *a.temperature;
    const double lambda = speedlimit::thermal_wavelength(tp);
    out << "lambda_th           " << format_sig(lambda) << " m\n";
    out << "macroscopic         " << (speedlimit::is_macroscopic(a.diameter, tp, a.factor) ? "yes" : "no")
        << " (d > " << format_sig(a.factor) << " lambda_th)\n";
  }
  return 0;
}

struct QslArgs {
  std::string hamiltonian;
  std::string state;
  std::optional<double> e0;
  bool json = false;
};

int run_qsl(const QslArgs& a, std::ostream& out, std::ostream& err) {
  const auto spec = models::load_hamiltonian_spec(a.hamiltonian);
  const opcore::Operator h = models::build_hamiltonian(spec);
  const bool amplitudes = a.state.find_first_of(",.ij") != std::string::npos;
  const opcore::StateVector psi = amplitudes ? normalized_state(h.geometry(), parse_amplitudes(a.state), err)
                                             : opcore::StateVector::from_label(h.geometry(), a.state);
  const auto r = speedlimit::qsl_time(h, psi, a.e0);
  if (a.json) {
    auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
    out << "{\"tau_mt\": " << num(r.tau_mt) << ", \"tau_ml\": " << num(r.tau_ml) << ", \"tau_qsl\": "
        << num(r.tau_qsl) << ", \"mean_energy\": " << num(r.mean_energy) << ", \"energy_spread\": "
        << num(r.energy_spread) << ", \"ground_energy\": " << num(r.ground_energy)
        << ", \"mt_unreachable\": " << (r.mt_unreachable ? "true" : "false")
        << ", \"ml_unreachable\": " << (r.ml_unreachable ? "true" : "false") << "}\n";
    return 0;
  }
  out << "<H>        " << format_sig(r.mean_energy, 12) << '\n';
  out << "dH         " << format_sig(r.energy_spread, 12) << '\n';
  out << "E0         " << format_sig(r.ground_energy, 12) << '\n';
  out << "tau_MT     " << format_sig(r.tau_mt, 12) << (r.mt_unreachable ? "  (dH = 0, unreachable)" : "") << '\n';
  out << "tau_ML     " << format_sig(r.tau_ml, 12) << (r.ml_unreachable ? "  (<H> = E0, unreachable)" : "") << '\n';
  out << "tau_QSL    " << format_sig(r.tau_qsl, 12) << "  (engine time, hbar = 1)\n";
  return 0;
}

struct MeasureArgs {
  std::string alpha = "1";
  std::string beta = "0";
  double g = 1.0;
  std::optional<double> t;
  std::string mode = "coupling";
  bool json = false;
};

int run_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.g > 0.0)) throw UsageError("--g must be positive");
  opcore::Vector v(2);
  v << parse_amplitude(a.alpha), parse_amplitude(a.beta);
  const auto psi = normalized_state(opcore::HilbertGeometry::qubits(1), v, err);
  const double t = a.t.value_or(std::numbers::pi / a.g);
  measure::ProtocolMode mode;
  const bool coupling = a.mode == "coupling" || a.mode == "eq7";
  if (coupling) mode = measure::CouplingHamiltonian{a.g};
  else if (a.mode == "exact") mode = measure::ExactUnitary{};
  else throw UsageError("--mode must be coupling or exact");
  const auto r = measure::run_ancilla_protocol(psi, measure::ProjectiveMeasurement::z_basis(), mode, t);
  if (a.json) {
    out << measure::to_json(r) << '\n';
    return 0;
  }
  out << "mode                 " << a.mode << (coupling ? " (g = " + format_sig(a.g) + ")" : "") << '\n';
  out << "duration             " << format_sig(t, 12) << " (engine time)\n";
  out << "p(0)                 " << format_sig(r.readout[0], 12) << '\n';
  out << "p(1)                 " << format_sig(r.readout[1], 12) << '\n';
  out << "born p(0), p(1)      " << format_sig(r.born[0], 12) << ", " << format_sig(r.born[1], 12) << '\n';
  out << "unitary fidelity     " << format_sig(r.unitary_fidelity, 12) << '\n';
  out << "dephasing distance   " << format_sig(r.dephasing_distance, 6) << '\n';
  out << "joint phase distance " << format_sig(r.joint_phase_distance, 6) << '\n';
  const auto& rho = r.reduced_system.matrix();
  out << "reduced state        [[" << format_sig(rho(0, 0).real(), 6) << ", " << format_sig(std::abs(rho(0, 1)), 6)
      << "], [" << format_sig(std::abs(rho(1, 0)), 6) << ", " << format_sig(rho(1, 1).real(), 6)
      << "]] (|entries|)\n";
  return 0;
}

struct ConeArgs {
  std::size_t n = 10;
  double h = 1.0;
  double g = 1.0;
  std::size_t source = 0;
  std::string probe = "Z";
  std::string source_op = "Z";
  double tmax = 10.0;
  double dt = 0.05;
  double eps = 0.1;
  std::optional<double> lattice_spacing;
  std::string csv;
  std::string arrivals;
  std::size_t workers = 1;
};

int run_lightcone(const ConeArgs& a, std::ostream& out, std::ostream& err) {
  lightcone::ConeOptions opt;
  opt.source_op = parse_pauli_flag(a.source_op);
  opt.workers = a.workers;
  const auto scan = lightcone::cone_scan({a.n, a.h, a.g}, a.source, parse_pauli_flag(a.probe),
                                         evolve::TimeGrid(0.0, a.tmax, a.dt), opt);
  const auto table = lightcone::arrival_times(scan, a.eps);
  if (!a.csv.empty()) lightcone::write_scan_csv(scan, std::filesystem::path(a.csv));
  if (!a.arrivals.empty()) lightcone::write_arrivals_csv(table, std::filesystem::path(a.arrivals));

  out << "site  distance  arrival (eps = " << format_sig(a.eps) << ")\n";
  for (std::size_t j = 0; j < table.arrival.size(); ++j) {
    out << std::setw(4) << j << "  " << std::setw(8) << table.distance[j] << "  "
        << (table.arrival[j] ? format_sig(*table.arrival[j], 6) : std::string("not reached")) << '\n';
  }
  out << "monotonicity violations: " << table.violations.size();
  if (!table.violations.empty()) out << " (worst " << format_sig(table.max_violation_steps()) << " grid steps)";
  out << '\n';
  try {
    const auto fit = lightcone::fit_velocity(table, a.lattice_spacing);
    out << "v_I               " << format_sig(fit.velocity, 8) << " sites per engine time\n";
    out << "relative residual " << format_sig(fit.relative_residual, 4) << " over " << fit.points << " points\n";
    if (fit.velocity_si) out << "v_I (SI)          " << format_sig(*fit.velocity_si, 6) << " m per engine time\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_bound_check(const std::string& dataset, double v, std::ostream& out, std::ostream& err) {
  const auto report = check_bound(dataset_or_builtin(dataset, err), v);
  out << "v = " << format_sig(v) << " m/s\n";
  out << std::left << std::setw(18) << "id" << std::setw(13) << "t_min [s]" << std::setw(13) << "t [s]"
      << std::setw(12) << "ratio" << "verdict\n";
  for (const auto& e : report.entries) {
    out << std::setw(18) << e.id << std::setw(13) << format_sig(e.t_min) << std::setw(13) << format_sig(e.measured)
        << std::setw(12) << format_sig(e.ratio) << (e.pass ? "pass" : "FAIL") << '\n';
  }
  out << std::right << report.passed() << '/' << report.entries.size() << " pass\n";
  return report.all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-time bounds, speed limits and light cones for small quantum systems", "qmt"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "SI estimates: v_E, t_min = d/v, thermal wavelength");
  estimate->add_option("--diameter", est.diameter, "object diameter d [m]")->required()->check(CLI::PositiveNumber);
  estimate->add_option("--charge-s", est.charge_s, "system charge: e, 2e, e/10 or coulombs")->capture_default_str();
  estimate->add_option("--charge-a", est.charge_a, "ancilla charge")->capture_default_str();
  estimate->add_option("--velocity", est.velocity, "extra velocity to evaluate [m/s]")->check(CLI::PositiveNumber);
  estimate->add_flag("--light", est.light, "also evaluate v = c");
  estimate->add_option("--mass", est.mass, "mass for the thermal wavelength [kg]")->check(CLI::PositiveNumber);
  estimate->add_option("--temperature", est.temperature, "temperature [K]")->check(CLI::PositiveNumber);
  estimate->add_option("--factor", est.factor, "macroscopic threshold d > factor * lambda_th")->capture_default_str();

  QslArgs qsl;
  auto* qsl_cmd = app.add_subcommand("qsl", "quantum speed limit for a Hamiltonian spec and a state");
  qsl_cmd->add_option("--hamiltonian", qsl.hamiltonian, "JSON Hamiltonian spec")->required()->check(CLI::ExistingFile);
  qsl_cmd->add_option("--state", qsl.state, "basis label like 10, or amplitudes like 0.6,0.8i")->required();
  qsl_cmd->add_option("--e0", qsl.e0, "ground energy (default: eigensolver)");
  qsl_cmd->add_flag("--json", qsl.json, "JSON output");

  MeasureArgs ms;
  auto* measure_cmd = app.add_subcommand("measure-sim", "ancilla-based z-measurement of alpha|0> + beta|1>");
  measure_cmd->add_option("--alpha", ms.alpha, "amplitude of |0>")->capture_default_str();
  measure_cmd->add_option("--beta", ms.beta, "amplitude of |1>")->capture_default_str();
  measure_cmd->add_option("--g", ms.g, "coupling g (engine units)")->capture_default_str();
  measure_cmd->add_option("--t", ms.t, "interaction time (default pi/g)");
  measure_cmd->add_option("--mode", ms.mode, "coupling (Hamiltonian, alias eq7) or exact (ideal unitary)")
      ->check(CLI::IsMember({"coupling", "eq7", "exact"}))
      ->capture_default_str();
  measure_cmd->add_flag("--json", ms.json, "JSON output");

  ConeArgs cone;
  auto* cone_cmd = app.add_subcommand("lightcone", "commutator-norm light cone of the transverse-field Ising chain");
  cone_cmd->set_help_flag("--help", "Print this help message and exit");
  cone_cmd->add_option("--n", cone.n, "chain length")->capture_default_str();
  cone_cmd->add_option("--h", cone.h, "field h")->capture_default_str();
  cone_cmd->add_option("--g", cone.g, "coupling g")->capture_default_str();
  cone_cmd->add_option("--source", cone.source, "source site")->capture_default_str();
  cone_cmd->add_option("--probe", cone.probe, "probe Pauli on every site")->capture_default_str();
  cone_cmd->add_option("--source-op", cone.source_op, "Pauli on the source site")->capture_default_str();
  cone_cmd->add_option("--tmax", cone.tmax, "final time")->capture_default_str();
  cone_cmd->add_option("--dt", cone.dt, "time step")->capture_default_str();
  cone_cmd->add_option("--eps", cone.eps, "arrival threshold in (0, 2)")->capture_default_str();
  cone_cmd->add_option("--lattice-spacing", cone.lattice_spacing, "site spacing [m] for v_I in SI")
      ->check(CLI::PositiveNumber);
  cone_cmd->add_option("--csv", cone.csv, "write site,time,commutator_norm CSV");
  cone_cmd->add_option("--arrivals", cone.arrivals, "write site,distance,arrival_time CSV");
  cone_cmd->add_option("--workers", cone.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  std::string bc_dataset;
  double bc_velocity = kDefaultVelocity;
  bool bc_light = false;
  auto* bound_cmd = app.add_subcommand("bound-check", "check t >= d/v on an experiment dataset");
  bound_cmd->add_option("--dataset", bc_dataset, "CSV dataset (default: built-in)")->check(CLI::ExistingFile);
  bound_cmd->add_option("--velocity", bc_velocity, "v [m/s]")->capture_default_str()->check(CLI::PositiveNumber);
  bound_cmd->add_flag("--light", bc_light, "use v = c");

  std::string ep_dataset;
  std::string ep_out;
  double ep_velocity = kDefaultVelocity;
  bool ep_light = false;
  auto* plot_cmd = app.add_subcommand("emit-plot", "write log-log plot data and the bound line");
  plot_cmd->add_option("--dataset", ep_dataset, "CSV dataset (default: built-in)")->check(CLI::ExistingFile);
  plot_cmd->add_option("--velocity", ep_velocity, "v [m/s]")->capture_default_str()->check(CLI::PositiveNumber);
  plot_cmd->add_flag("--light", ep_light, "use v = c");
  plot_cmd->add_option("--out", ep_out, "data CSV path; the bound line goes to <stem>_bound.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*estimate) return run_estimate(est, out);
    if (*qsl_cmd) return run_qsl(qsl, out, err);
    if (*measure_cmd) return run_measure(ms, out, err);
    if (*cone_cmd) return run_lightcone(cone, out, err);
    if (*bound_cmd) return run_bound_check(bc_dataset, bc_light ? PhysicalConstants::c : bc_velocity, out, err);
    if (*plot_cmd) {
      const auto records = dataset_or_builtin(ep_dataset, err);
      const auto files = emit_plot_data(records, ep_light ? PhysicalConstants::c : ep_velocity, ep_out);
      out << "wrote " << files.data.string() << " (" << files.data_rows << " rows) and " << files.bound_line.string()
          << " (" << files.bound_rows << " rows)\n";
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qmt::bench
