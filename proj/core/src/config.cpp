// Copyright 2026 The lassorw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lassorw/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lassorw/errors.hpp"

namespace lassorw {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!known.count(key))
      throw ConfigError(where + ": unknown key '" + key + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& dst) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

PenaltySpec penalty_from_json(const json& j) {
  if (j.is_string()) return make_penalty(j.get<std::string>());
  if (!j.is_object())
    throw ConfigError("penalties: entries must be names or objects");
  reject_unknown(j, {"kind", "eps", "q", "alpha", "beta"}, "penalty");
  std::string kind;
  double eps = 0.1, q = 0.5, alpha = 2.0, beta = PenaltySpec::kDefaultBeta;
  read(j, "kind", kind);
  read(j, "eps", eps);
  read(j, "q", q);
  read(j, "alpha", alpha);
  read(j, "beta", beta);
  return make_penalty(kind, eps, q, alpha, beta);
}

json penalty_to_json(const PenaltySpec& p) {
  json j;
  j["kind"] = std::string(to_string(p.kind()));
  switch (p.kind()) {
    case PenaltyKind::Lq:
      j["q"] = p.q();
      [[fallthrough]];
    case PenaltyKind::Log:
      j["eps"] = p.eps();
      j["beta"] = p.beta();
      break;
    case PenaltyKind::Mcp:
      j["alpha"] = p.alpha();
      break;
  }
  return j;
}

}  // namespace

PenaltySpec make_penalty(std::string_view kind, double eps, double q,
                         double alpha, double beta) {
  switch (parse_penalty_kind(kind)) {
    case PenaltyKind::Log:
      return PenaltySpec::log(eps, beta);
    case PenaltyKind::Lq:
      return PenaltySpec::lq(eps, q, beta);
    case PenaltyKind::Mcp:
      return PenaltySpec::mcp(alpha);
  }
  throw ConfigError("unknown penalty");
}

BenchConfig parse_bench_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"n", "m", "k_values", "trials", "penalties", "algorithms",
                  "lambda_noisefree", "lambda_noisy", "snr_db", "tau", "delta",
                  "max_reweight", "base_seed", "admm", "ist_max_iter",
                  "ist_allow_unsafe_step", "threads"},
                 "config");

  BenchConfig cfg;
  read(j, "n", cfg.n);
  read(j, "m", cfg.m);
  read(j, "k_values", cfg.k_values);
  read(j, "trials", cfg.trials);
  read(j, "lambda_noisefree", cfg.lambda_noisefree);
  read(j, "lambda_noisy", cfg.lambda_noisy);
  read(j, "tau", cfg.tau);
  read(j, "delta", cfg.delta);
  read(j, "max_reweight", cfg.max_reweight);
  read(j, "base_seed", cfg.base_seed);
  read(j, "ist_max_iter", cfg.ist_max_iter);
  read(j, "ist_allow_unsafe_step", cfg.ist_allow_unsafe_step);
  read(j, "threads", cfg.threads);

  if (j.contains("snr_db")) {
    const json& s = j.at("snr_db");
    if (s.is_null()) {
      cfg.snr_db.reset();
    } else if (s.is_number()) {
      cfg.snr_db = s.get<double>();
    } else {
      throw ConfigError("config key 'snr_db': expected a number or null");
    }
  }
  if (j.contains("penalties")) {
    const json& arr = j.at("penalties");
    if (!arr.is_array()) throw ConfigError("config key 'penalties': expected array");
    cfg.penalties.clear();
    for (const auto& e : arr) cfg.penalties.push_back(penalty_from_json(e));
  }
  if (j.contains("algorithms")) {
    const json& arr = j.at("algorithms");
    if (!arr.is_array())
      throw ConfigError("config key 'algorithms': expected array");
    cfg.algorithms.clear();
    for (const auto& e : arr) {
      if (!e.is_string())
        throw ConfigError("config key 'algorithms': expected names");
      cfg.algorithms.push_back(parse_algorithm(e.get<std::string>()));
    }
  }
  if (j.contains("admm")) {
    const json& a = j.at("admm");
    if (!a.is_object()) throw ConfigError("config key 'admm': expected object");
    reject_unknown(a, {"rho", "tol_abs", "tol_rel", "max_iter", "adaptive_rho",
                      "polish"},
                   "admm");
    read(a, "rho", cfg.admm.rho);
    read(a, "tol_abs", cfg.admm.tol_abs);
    read(a, "tol_rel", cfg.admm.tol_rel);
    read(a, "max_iter", cfg.admm.max_iter);
    read(a, "adaptive_rho", cfg.admm.adaptive_rho);
    read(a, "polish", cfg.admm.polish);
  }
  cfg.validate();
  return cfg;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bench_config(text.str());
}

std::string dump_bench_config(const BenchConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["k_values"] = cfg.k_values;
  j["trials"] = cfg.trials;
  j["penalties"] = json::array();
  for (const auto& p : cfg.penalties) j["penalties"].push_back(penalty_to_json(p));
  j["algorithms"] = json::array();
  for (auto a : cfg.algorithms) j["algorithms"].push_back(std::string(to_string(a)));
  j["lambda_noisefree"] = cfg.lambda_noisefree;
  j["lambda_noisy"] = cfg.lambda_noisy;
  j["snr_db"] = cfg.snr_db ? json(*cfg.snr_db) : json(nullptr);
  j["tau"] = cfg.tau;
  j["delta"] = cfg.delta;
  j["max_reweight"] = cfg.max_reweight;
  j["base_seed"] = cfg.base_seed;
  j["admm"] = {{"rho", cfg.admm.rho},
               {"tol_abs", cfg.admm.tol_abs},
               {"tol_rel", cfg.admm.tol_rel},
               {"max_iter", cfg.admm.max_iter},
               {"adaptive_rho", cfg.admm.adaptive_rho},
               {"polish", cfg.admm.polish}};
  j["ist_max_iter"] = cfg.ist_max_iter;
  j["ist_allow_unsafe_step"] = cfg.ist_allow_unsafe_step;
  j["threads"] = cfg.threads;
  return j.dump(2);
}

}  // namespace lassorw
