#include "qmt/models/hamiltonian_spec.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmt::models {
namespace {

using nlohmann::json;

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("hamiltonian spec: '") + key + "' must be a number");
  return v.get<double>();
}

std::size_t count(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("hamiltonian spec: missing '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw std::invalid_argument(std::string("hamiltonian spec: '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw std::invalid_argument("hamiltonian spec: unknown key '" + k + "'");
  }
}

IsingParams chain(const json& j) {
  IsingParams p{count(j, "n"), number(j, "h", 1.0), number(j, "g", 1.0)};
  p.validate();
  return p;
}

}  // namespace

HamiltonianSpec parse_hamiltonian_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("hamiltonian spec: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw std::invalid_argument("hamiltonian spec: expected an object with a string 'type'");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "ising") {
    reject_unknown(j, {"type", "n", "h", "g"});
    return IsingSpec{chain(j)};
  }
  if (type == "ising+ancilla") {
    reject_unknown(j, {"type", "n", "h", "g", "hA", "gA", "attach"});
    IsingAncillaSpec s{chain(j), {number(j, "hA", 0.0), number(j, "gA", 0.0), std::nullopt}};
    if (j.contains("attach")) {
      s.ancilla.attach_site = count(j, "attach");
      if (*s.ancilla.attach_site >= s.params.n) {
        throw std::invalid_argument("hamiltonian spec: 'attach' outside the chain");
      }
    }
    return s;
  }
  if (type == "measurement") {
    reject_unknown(j, {"type", "g"});
    MeasurementSpec s{number(j, "g", 1.0)};
    if (!(s.g > 0.0)) throw std::invalid_argument("hamiltonian spec: measurement coupling g must be positive");
    return s;
  }
  throw std::invalid_argument("hamiltonian spec: unknown type '" + type + "'");
}

HamiltonianSpec load_hamiltonian_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open hamiltonian spec " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_hamiltonian_spec(text.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string to_json(const HamiltonianSpec& spec) {
  json j;
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MeasurementSpec>) {
          j = {{"type", "measurement"}, {"g", s.g}};
        } else {
          j = {{"type", "ising"}, {"n", s.params.n}, {"h", s.params.h}, {"g", s.params.g}};
          if constexpr (std::is_same_v<T, IsingAncillaSpec>) {
            j["type"] = "ising+ancilla";
            j["hA"] = s.ancilla.h_a;
            j["gA"] = s.ancilla.g_a;
            if (s.ancilla.attach_site) j["attach"] = *s.ancilla.attach_site;
          }
        }
      },
      spec);
  return j.dump();
}

Operator build_hamiltonian(const HamiltonianSpec& spec, std::size_t max_dim) {
  return std::visit(
      [max_dim](const auto& s) -> Operator {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IsingSpec>) return build_ising(s.params, max_dim);
        else if constexpr (std::is_same_v<T, IsingAncillaSpec>) return build_ising_with_ancilla(s.params, s.ancilla, max_dim);
        else return build_binary_measurement_hamiltonian(s.g);
      },
      spec);
}

}  // namespace qmt::models
