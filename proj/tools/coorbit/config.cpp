// Copyright 2026 The coorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "coorbit/cv_tomo.hpp"
#include "coorbit/spin_moyal.hpp"
#include "coorbit/su11.hpp"

namespace coorbit::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Type { integer, real, list, choice };

struct Field {
  const char* key;
  Type type;
  double lo;
  double hi;
  Value fallback;
  std::vector<std::string> choices = {};
};

using Schema = std::vector<Field>;

constexpr double kPi = std::numbers::pi;

const Schema& param_schema(SystemKind kind) {
  static const Schema spin = {
      {"two_s", Type::integer, 1, 8, std::int64_t{1}},
      // 0 selects the exact (2s+1) x (4s+2) grid.
      {"n_theta", Type::integer, 0, 128, std::int64_t{0}},
      {"n_phi", Type::integer, 0, 256, std::int64_t{0}},
  };
  static const Schema dps = {
      {"N", Type::integer, 2, 16, std::int64_t{3}},
  };
  static const Schema homodyne = {
      {"d", Type::integer, 1, 64, std::int64_t{16}},
      {"R", Type::real, 1e-3, 20, 6.0},
      {"n_r", Type::integer, 2, 512, std::int64_t{48}},
      {"n_phi", Type::integer, 2, 512, std::int64_t{64}},
      {"ladder", Type::list, 1e-3, 20, std::vector<double>{}},
  };
  static const Schema symplectic = {
      {"d", Type::integer, 1, 48, std::int64_t{16}},
      {"deltas", Type::list, 1e-3, 64, std::vector<double>{1, 2, 4, 8}},
      {"kernel", Type::choice, 0, 0, std::string("symmetric"), {"symmetric", "as_printed"}},
      {"n_x", Type::integer, 8, 1000, std::int64_t{200}},
      {"n_mn", Type::integer, 4, 256, std::int64_t{64}},
  };
  static const Schema su11 = {
      {"k", Type::real, 0.5, 8, 1.0},
      {"cutoff", Type::integer, 2, 64, std::int64_t{10}},
      {"theta_max", Type::list, 1e-3, 10, std::vector<double>{2, 4, 6}},
      {"n_theta", Type::integer, 2, 512, std::int64_t{64}},
      {"n_phi", Type::integer, 2, 512, std::int64_t{32}},
  };
  switch (kind) {
    case SystemKind::spin: return spin;
    case SystemKind::dps: return dps;
    case SystemKind::homodyne: return homodyne;
    case SystemKind::symplectic: return symplectic;
    case SystemKind::su11: return su11;
  }
  throw ConfigError("unknown system");
}

const Schema& state_schema(const std::string& kind) {
  static const Schema fock = {{"n", Type::integer, 0, 1e6, std::int64_t{0}}};
  static const Schema coherent = {
      {"re", Type::real, -10, 10, 0.0},
      {"im", Type::real, -10, 10, 0.0},
  };
  static const Schema thermal = {{"nbar", Type::real, 0, 100, 0.5}};
  static const Schema spin_coherent = {
      {"theta", Type::real, 0, kPi, 0.0},
      {"phi", Type::real, 0, 2 * kPi, 0.0},
  };
  static const Schema random = {
      {"seed", Type::integer, 0, 9007199254740992.0, std::int64_t{42}},
      // 0 means full rank.
      {"rank", Type::integer, 0, 4096, std::int64_t{0}},
  };
  if (kind == "fock") return fock;
  if (kind == "coherent") return coherent;
  if (kind == "thermal") return thermal;
  if (kind == "spin_coherent") return spin_coherent;
  if (kind == "random") return random;
  throw ConfigError("state: unknown kind '" + kind + "'");
}

bool state_allowed(SystemKind system, const std::string& kind) {
  if (kind == "fock" || kind == "random") return true;
  switch (system) {
    case SystemKind::spin: return kind == "spin_coherent";
    case SystemKind::dps: return false;
    case SystemKind::homodyne:
    case SystemKind::symplectic: return kind == "coherent" || kind == "thermal";
    case SystemKind::su11: return kind == "thermal";
  }
  return false;
}

const Field& find_field(const Schema& schema, const std::string& key, const std::string& where) {
  for (const Field& f : schema) {
    if (key == f.key) return f;
  }
  throw ConfigError(where + ": unknown key '" + key + "'");
}

std::string describe_range(const Field& f) {
  std::ostringstream out;
  out << "[" << f.lo << ", " << f.hi << "]";
  return out.str();
}

void check_range(const Field& f, double x, const std::string& where) {
  if (!std::isfinite(x) || x < f.lo || x > f.hi) {
    std::ostringstream msg;
    msg << where << "." << f.key << " = " << x << " outside " << describe_range(f);
    throw ConfigError(msg.str());
  }
}

void check_value(const Field& f, const Value& v, const std::string& where) {
  switch (f.type) {
    case Type::integer:
      check_range(f, static_cast<double>(std::get<std::int64_t>(v)), where);
      break;
    case Type::real:
      check_range(f, std::get<double>(v), where);
      break;
    case Type::list: {
      const auto& list = std::get<std::vector<double>>(v);
      if (list.empty()) throw ConfigError(where + "." + f.key + " must not be empty");
      for (double x : list) check_range(f, x, where);
      break;
    }
    case Type::choice: {
      const auto& s = std::get<std::string>(v);
      if (std::find(f.choices.begin(), f.choices.end(), s) == f.choices.end()) {
        throw ConfigError(where + "." + f.key + ": unsupported value '" + s + "'");
      }
      break;
    }
  }
}

Value read_value(const Field& f, const json& j, const std::string& where) {
  const std::string name = where + "." + f.key;
  switch (f.type) {
    case Type::integer:
      if (!j.is_number_integer()) throw ConfigError(name + " must be an integer");
      return j.get<std::int64_t>();
    case Type::real:
      if (!j.is_number()) throw ConfigError(name + " must be a number");
      return j.get<double>();
    case Type::list: {
      if (!j.is_array()) throw ConfigError(name + " must be an array of numbers");
      std::vector<double> out;
      for (const json& x : j) {
        if (!x.is_number()) throw ConfigError(name + " must be an array of numbers");
        out.push_back(x.get<double>());
      }
      return out;
    }
    case Type::choice:
      if (!j.is_string()) throw ConfigError(name + " must be a string");
      return j.get<std::string>();
  }
  throw ConfigError(name + ": bad type");
}

json write_value(const Value& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

ValueMap read_map(const json& obj, const Schema& schema, const std::string& where,
                  const char* skip = nullptr) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  ValueMap out;
  for (const auto& [key, val] : obj.items()) {
    if (skip != nullptr && key == skip) continue;
    const Field& f = find_field(schema, key, where);
    Value v = read_value(f, val, where);
    check_value(f, v, where);
    out.emplace(key, std::move(v));
  }
  return out;
}

void check_map(const ValueMap& map, const Schema& schema, const std::string& where) {
  for (const auto& [key, val] : map) {
    const Field& f = find_field(schema, key, where);
    // Variant alternatives are declared in Type order.
    if (static_cast<Type>(val.index()) != f.type) {
      throw ConfigError(where + "." + key + ": wrong type");
    }
    check_value(f, val, where);
  }
}

const Value& lookup(const ValueMap& map, const Schema& schema, const std::string& key) {
  const auto it = map.find(key);
  if (it != map.end()) return it->second;
  return find_field(schema, key, "params").fallback;
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, val] : obj.items()) {
    (void)val;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

std::optional<std::string> read_path(const json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj[key].is_string() || obj[key].get<std::string>().empty()) {
    throw ConfigError(std::string("outputs.") + key + " must be a non-empty string");
  }
  return obj[key].get<std::string>();
}

std::optional<double> read_tolerance(const json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj[key].is_number()) throw ConfigError(std::string("tolerances.") + key + " must be a number");
  const double x = obj[key].get<double>();
  if (!std::isfinite(x) || x < 0.0) {
    throw ConfigError(std::string("tolerances.") + key + " must be finite and non-negative");
  }
  return x;
}

Matrix random_ginibre(Index dim, Index rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, rank);
  for (Index j = 0; j < rank; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  }
  Matrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace

const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::spin: return "spin";
    case SystemKind::dps: return "dps";
    case SystemKind::homodyne: return "homodyne";
    case SystemKind::symplectic: return "symplectic";
    case SystemKind::su11: return "su11";
  }
  return "?";
}

SystemKind system_from_string(const std::string& name) {
  for (SystemKind k : {SystemKind::spin, SystemKind::dps, SystemKind::homodyne,
                       SystemKind::symplectic, SystemKind::su11}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown system '" + name + "' (expected spin, dps, homodyne, symplectic, su11)");
}

std::int64_t RunConfig::get_int(const std::string& key) const {
  return std::get<std::int64_t>(lookup(params, param_schema(system), key));
}

double RunConfig::get_real(const std::string& key) const {
  return std::get<double>(lookup(params, param_schema(system), key));
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
  return std::get<std::vector<double>>(lookup(params, param_schema(system), key));
}

std::string RunConfig::get_choice(const std::string& key) const {
  return std::get<std::string>(lookup(params, param_schema(system), key));
}

Index RunConfig::dim() const {
  switch (system) {
    case SystemKind::spin: return get_int("two_s") + 1;
    case SystemKind::dps: return get_int("N");
    case SystemKind::homodyne:
    case SystemKind::symplectic: return get_int("d");
    case SystemKind::su11: return get_int("cutoff");
  }
  return 0;
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(doc, {"system", "params", "state", "outputs", "tolerances"}, "config");
  if (!doc.contains("system") || !doc["system"].is_string()) {
    throw ConfigError("config: 'system' is required and must be a string");
  }
  RunConfig cfg;
  cfg.system = system_from_string(doc["system"].get<std::string>());
  if (doc.contains("params")) cfg.params = read_map(doc["params"], param_schema(cfg.system), "params");
  if (doc.contains("state")) {
    const json& st = doc["state"];
    if (!st.is_object() || !st.contains("kind") || !st["kind"].is_string()) {
      throw ConfigError("state: 'kind' is required and must be a string");
    }
    cfg.state.kind = st["kind"].get<std::string>();
    cfg.state.fields = read_map(st, state_schema(cfg.state.kind), "state", "kind");
  }
  if (doc.contains("outputs")) {
    const json& out = doc["outputs"];
    require_keys(out, {"report", "csv", "state"}, "outputs");
    cfg.outputs.report = read_path(out, "report");
    cfg.outputs.csv = read_path(out, "csv");
    cfg.outputs.state = read_path(out, "state");
  }
  if (doc.contains("tolerances")) {
    const json& tol = doc["tolerances"];
    require_keys(tol, {"hs_error", "fidelity"}, "tolerances");
    cfg.tolerances.hs_error = read_tolerance(tol, "hs_error");
    cfg.tolerances.fidelity = read_tolerance(tol, "fidelity");
  }
  validate(cfg);
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json doc;
  doc["system"] = to_string(cfg.system);
  if (!cfg.params.empty()) {
    json p = json::object();
    for (const auto& [k, v] : cfg.params) p[k] = write_value(v);
    doc["params"] = p;
  }
  json st = json::object();
  st["kind"] = cfg.state.kind;
  for (const auto& [k, v] : cfg.state.fields) st[k] = write_value(v);
  doc["state"] = st;
  json out = json::object();
  if (cfg.outputs.report) out["report"] = *cfg.outputs.report;
  if (cfg.outputs.csv) out["csv"] = *cfg.outputs.csv;
  if (cfg.outputs.state) out["state"] = *cfg.outputs.state;
  if (!out.empty()) doc["outputs"] = out;
  json tol = json::object();
  if (cfg.tolerances.hs_error) tol["hs_error"] = *cfg.tolerances.hs_error;
  if (cfg.tolerances.fidelity) tol["fidelity"] = *cfg.tolerances.fidelity;
  if (!tol.empty()) doc["tolerances"] = tol;
  return doc.dump(2) + "\n";
}

RunConfig default_config(SystemKind system) {
  RunConfig cfg;
  cfg.system = system;
  return cfg;
}

void validate(const RunConfig& cfg) {
  check_map(cfg.params, param_schema(cfg.system), "params");
  check_map(cfg.state.fields, state_schema(cfg.state.kind), "state");
  if (!state_allowed(cfg.system, cfg.state.kind)) {
    throw ConfigError(std::string("state kind '") + cfg.state.kind + "' is not available for system " +
                      to_string(cfg.system));
  }
  const Index dim = cfg.dim();
  if (cfg.state.kind == "fock") {
    const auto it = cfg.state.fields.find("n");
    const std::int64_t n = it == cfg.state.fields.end() ? 0 : std::get<std::int64_t>(it->second);
    if (n >= dim) {
      throw ConfigError("state.n = " + std::to_string(n) + " must be below the dimension " +
                        std::to_string(dim));
    }
  }
  if (cfg.state.kind == "random") {
    const auto it = cfg.state.fields.find("rank");
    if (it != cfg.state.fields.end() && std::get<std::int64_t>(it->second) > dim) {
      throw ConfigError("state.rank exceeds the dimension " + std::to_string(dim));
    }
  }
  if (cfg.system == SystemKind::symplectic && cfg.get_int("n_mn") % 2 != 0) {
    throw ConfigError("params.n_mn must be even");
  }
  if (cfg.system == SystemKind::spin) {
    const bool t = cfg.get_int("n_theta") == 0;
    const bool p = cfg.get_int("n_phi") == 0;
    if (t != p) throw ConfigError("params: n_theta and n_phi must both be 0 or both be positive");
  }
}

DensityMatrix make_state(const RunConfig& cfg) {
  validate(cfg);
  const Schema& schema = state_schema(cfg.state.kind);
  auto integer = [&](const char* key) {
    return std::get<std::int64_t>(lookup(cfg.state.fields, schema, key));
  };
  auto real = [&](const char* key) { return std::get<double>(lookup(cfg.state.fields, schema, key)); };
  const Index dim = cfg.dim();
  const std::string& kind = cfg.state.kind;

  if (kind == "fock") return DensityMatrix::pure(Vector::Unit(dim, integer("n")));
  if (kind == "coherent") {
    return DensityMatrix::pure(
        cv::coherent_state(cv::FockSpace{static_cast<int>(dim)}, cplx(real("re"), real("im"))));
  }
  if (kind == "thermal") {
    if (cfg.system == SystemKind::su11) {
      return su11::thermal_state({cfg.get_real("k"), static_cast<int>(dim)}, real("nbar"));
    }
    return cv::thermal_state(cv::FockSpace{static_cast<int>(dim)}, real("nbar"));
  }
  if (kind == "spin_coherent") {
    return DensityMatrix::pure(spin::coherent_state(
        spin::SpinParams{static_cast<int>(cfg.get_int("two_s"))}, real("theta"), real("phi")));
  }
  const std::int64_t rank = integer("rank");
  return DensityMatrix(Operator(random_ginibre(dim, rank == 0 ? dim : rank,
                                               static_cast<std::uint64_t>(integer("seed")))));
}

}  // namespace coorbit::cli
