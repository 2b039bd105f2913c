#include "runconfig.hpp"

#include <algorithm>
#include <set>

#include "ale/errors.hpp"

namespace ale::cli {

namespace {

const std::set<std::string> kGroups = {"picard", "aklines", "nodal", "metrics"};

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ParseError("unknown field '" + key + "' in " + where);
    }
  }
}

}  // namespace

Json RunConfig::echo() const {
  Json j;
  if (tol) j["tol"] = *tol;
  j["seed"] = seed;
  j["out"] = out.empty() ? "-" : out;
  j["only"] = only.empty() ? Json::array({"picard", "aklines", "nodal", "metrics"})
                           : Json(only);
  j["threads"] = threads;
  j["nodal"]["ell"] = nodal_ell;
  return j;
}

RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return parse_config_json(j);
}

RunConfig parse_config_json(const Json& j) {
  if (!j.is_object()) throw ParseError("config: top level must be a JSON object");
  reject_unknown(j, {"tol", "seed", "out", "only", "threads", "nodal"}, "config");

  RunConfig cfg;
  if (j.contains("tol")) {
    if (!j["tol"].is_number()) throw ParseError("config: 'tol' must be a number");
    cfg.tol = j["tol"].get<double>();
    if (!(*cfg.tol > 0.0)) throw ParseError("config: 'tol' must be positive");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw ParseError("config: 'seed' must be an integer");
    }
    const auto s = j["seed"].get<long long>();
    if (s < 0) throw ParseError("config: 'seed' must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ParseError("config: 'out' must be a string");
    cfg.out = j["out"].get<std::string>();
  }
  if (j.contains("only")) {
    if (!j["only"].is_array()) throw ParseError("config: 'only' must be an array");
    for (const Json& item : j["only"]) {
      if (!item.is_string() || !kGroups.count(item.get<std::string>())) {
        throw ParseError("config: 'only' entries must be one of picard/aklines/nodal/metrics");
      }
      cfg.only.push_back(item.get<std::string>());
    }
  }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer()) throw ParseError("config: 'threads' must be an integer");
    cfg.threads = j["threads"].get<int>();
    if (cfg.threads < 1) throw ParseError("config: 'threads' must be >= 1");
  }
  if (j.contains("nodal")) {
    const Json& n = j["nodal"];
    if (!n.is_object()) throw ParseError("config: 'nodal' must be an object");
    reject_unknown(n, {"ell"}, "config.nodal");
    if (n.contains("ell")) {
      if (!n["ell"].is_number_integer()) throw ParseError("config: 'nodal.ell' must be an integer");
      cfg.nodal_ell = n["ell"].get<int>();
      if (cfg.nodal_ell < 1 || cfg.nodal_ell > 6) {
        throw ParseError("config: 'nodal.ell' must lie in 1..6");
      }
    }
  }
  return cfg;
}

}  // namespace ale::cli
