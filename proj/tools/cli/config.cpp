#include "cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cli/experiments.hpp"

namespace bdglab::cli {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) fail(prefix + key, "unknown field");
  }
}

const json& object_at(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  return j;
}

double get_double(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

std::uint64_t get_unsigned(const json& j, const std::string& field) {
  if (!j.is_number_unsigned()) fail(field, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_doubles(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_double(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

GaugeSpec gauge_from_json(const json& j, const std::string& field) {
  object_at(j, field);
  reject_unknown(j, field + ".", {"family", "p", "scale", "alpha", "knots", "domain_floor"});
  GaugeSpec s;
  if (!j.contains("family")) fail(field + ".family", "missing");
  try {
    s.family = parse_family(get_string(j["family"], field + ".family"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(field + ".family", e.what());
  }
  if (s.family == GaugeFamily::complementary) fail(field + ".family", "complementary gauges are derived, not configured");
  if (j.contains("p")) s.p = get_double(j["p"], field + ".p");
  if (j.contains("scale")) s.scale = get_double(j["scale"], field + ".scale");
  if (j.contains("alpha")) s.alpha = get_double(j["alpha"], field + ".alpha");
  if (j.contains("domain_floor")) s.domain_floor = get_double(j["domain_floor"], field + ".domain_floor");
  if (j.contains("knots")) {
    const json& k = j["knots"];
    if (!k.is_array()) fail(field + ".knots", "expected an array of [t, value] pairs");
    for (std::size_t i = 0; i < k.size(); ++i) {
      const std::string f = field + ".knots[" + std::to_string(i) + "]";
      if (!k[i].is_array() || k[i].size() != 2) fail(f, "expected a [t, value] pair");
      s.knots.emplace_back(get_double(k[i][0], f), get_double(k[i][1], f));
    }
  }
  try {
    make_gauge(s);
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
  return s;
}

ordered_json gauge_to_json(const GaugeSpec& s) {
  ordered_json j;
  j["family"] = std::string(to_string(s.family));
  j["p"] = s.p;
  j["scale"] = s.scale;
  j["alpha"] = s.alpha;
  j["domain_floor"] = s.domain_floor;
  if (!s.knots.empty()) {
    ordered_json k = ordered_json::array();
    for (const auto& [t, v] : s.knots) k.push_back({t, v});
    j["knots"] = k;
  }
  return j;
}

StoppingTimeSpec stop_from_json(const json& j) {
  object_at(j, "stop");
  reject_unknown(j, "stop.", {"kind", "level", "mode", "horizon"});
  StoppingTimeSpec s;
  if (!j.contains("kind")) fail("stop.kind", "missing");
  try {
    s.kind = parse_stop_kind(get_string(j["kind"], "stop.kind"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail("stop.kind", e.what());
  }
  if (j.contains("level")) s.level = get_double(j["level"], "stop.level");
  if (j.contains("horizon")) s.horizon = get_double(j["horizon"], "stop.horizon");
  if (j.contains("mode")) {
    const std::string m = get_string(j["mode"], "stop.mode");
    if (m == "weak") {
      s.mode = HitMode::weak;
    } else if (m == "strict") {
      s.mode = HitMode::strict;
    } else {
      fail("stop.mode", "expected 'weak' or 'strict', got '" + m + "'");
    }
  }
  if (s.level < 0.0) fail("stop.level", "must be nonnegative");
  return s;
}

const std::set<std::string>& sweep_names() {
  static const std::set<std::string> names{"betas", "deltas", "lambdas", "horizons", "scales", "p", "m"};
  return names;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, "",
                 {"experiment", "seed", "replicates", "grid", "stop", "lambda", "phi", "space", "sweep", "martingale",
                  "integrands", "pair", "metric", "blocks", "q", "kappa", "audit_level", "stability_factor",
                  "refinement_tolerance", "output"});

  ExperimentConfig c;
  if (!j.contains("experiment")) fail("experiment", "missing");
  c.experiment = get_string(j["experiment"], "experiment");
  const ExperimentInfo* info = find_experiment(c.experiment);
  if (!info) fail("experiment", "unknown experiment kind '" + c.experiment + "'");

  if (j.contains("seed")) c.seed = get_unsigned(j["seed"], "seed");
  if (j.contains("replicates")) {
    c.replicates = get_unsigned(j["replicates"], "replicates");
    if (info->monte_carlo && *c.replicates < 100) fail("replicates", "Monte Carlo experiments need at least 100");
  }
  if (j.contains("grid")) {
    const json& g = object_at(j["grid"], "grid");
    reject_unknown(g, "grid.", {"T", "n", "refine", "d"});
    if (g.contains("T")) {
      c.horizon = get_double(g["T"], "grid.T");
      if (!(*c.horizon > 0.0)) fail("grid.T", "must be positive");
    }
    if (g.contains("n")) {
      c.n = get_unsigned(g["n"], "grid.n");
      if (*c.n == 0) fail("grid.n", "must be positive");
    }
    if (g.contains("refine")) {
      c.refine = get_unsigned(g["refine"], "grid.refine");
      if (*c.refine == 0) fail("grid.refine", "must be positive");
    }
    if (g.contains("d")) {
      c.d = get_unsigned(g["d"], "grid.d");
      if (*c.d == 0) fail("grid.d", "must be positive");
    }
  }
  if (j.contains("stop")) c.stop = stop_from_json(j["stop"]);
  if (j.contains("lambda")) c.lambda = gauge_from_json(j["lambda"], "lambda");
  if (j.contains("phi")) c.phi = gauge_from_json(j["phi"], "phi");
  if (j.contains("space")) {
    const json& s = object_at(j["space"], "space");
    reject_unknown(s, "space.", {"weights"});
    if (!s.contains("weights")) fail("space.weights", "missing");
    c.weights = get_doubles(s["weights"], "space.weights");
    if (c.weights->empty()) fail("space.weights", "must be nonempty");
    for (double w : *c.weights) {
      if (!(w > 0.0)) fail("space.weights", "weights must be positive");
    }
  }
  if (j.contains("sweep")) {
    const json& s = object_at(j["sweep"], "sweep");
    reject_unknown(s, "sweep.", sweep_names());
    for (const auto& [key, value] : s.items()) {
      auto v = get_doubles(value, "sweep." + key);
      if (v.empty()) fail("sweep." + key, "unresolvable sweep: empty list");
      c.sweeps[key] = std::move(v);
    }
  }
  if (j.contains("martingale")) c.martingale = get_string(j["martingale"], "martingale");
  if (j.contains("integrands")) {
    const json& a = j["integrands"];
    if (!a.is_array() || a.empty()) fail("integrands", "expected a nonempty array of names");
    c.integrands.emplace();
    for (std::size_t i = 0; i < a.size(); ++i) c.integrands->push_back(get_string(a[i], "integrands"));
  }
  if (j.contains("pair")) c.pair = get_string(j["pair"], "pair");
  if (j.contains("metric")) {
    c.metric = get_string(j["metric"], "metric");
    if (*c.metric != "absolute" && *c.metric != "modular") fail("metric", "expected 'absolute' or 'modular'");
  }
  if (j.contains("blocks")) c.blocks = get_unsigned(j["blocks"], "blocks");
  if (j.contains("q")) c.q = get_double(j["q"], "q");
  if (j.contains("kappa")) c.kappa = get_double(j["kappa"], "kappa");
  if (j.contains("audit_level")) c.audit_level = get_double(j["audit_level"], "audit_level");
  if (j.contains("stability_factor")) c.stability_factor = get_double(j["stability_factor"], "stability_factor");
  if (j.contains("refinement_tolerance")) {
    c.refinement_tolerance = get_double(j["refinement_tolerance"], "refinement_tolerance");
  }
  if (j.contains("output")) c.output = get_string(j["output"], "output");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  ordered_json j;
  j["experiment"] = c.experiment;
  if (c.seed) j["seed"] = *c.seed;
  if (c.replicates) j["replicates"] = *c.replicates;
  if (c.horizon || c.n || c.refine || c.d) {
    ordered_json g = ordered_json::object();
    if (c.horizon) g["T"] = *c.horizon;
    if (c.n) g["n"] = *c.n;
    if (c.refine) g["refine"] = *c.refine;
    if (c.d) g["d"] = *c.d;
    j["grid"] = g;
  }
  if (c.stop) {
    ordered_json s;
    s["kind"] = std::string(to_string(c.stop->kind));
    s["level"] = c.stop->level;
    s["mode"] = c.stop->mode == HitMode::weak ? "weak" : "strict";
    s["horizon"] = c.stop->horizon;
    j["stop"] = s;
  }
  if (c.lambda) j["lambda"] = gauge_to_json(*c.lambda);
  if (c.phi) j["phi"] = gauge_to_json(*c.phi);
  if (c.weights) j["space"] = {{"weights", *c.weights}};
  if (!c.sweeps.empty()) {
    ordered_json s = ordered_json::object();
    for (const auto& [k, v] : c.sweeps) s[k] = v;
    j["sweep"] = s;
  }
  if (c.martingale) j["martingale"] = *c.martingale;
  if (c.integrands) j["integrands"] = *c.integrands;
  if (c.pair) j["pair"] = *c.pair;
  if (c.metric) j["metric"] = *c.metric;
  if (c.blocks) j["blocks"] = *c.blocks;
  if (c.q) j["q"] = *c.q;
  if (c.kappa) j["kappa"] = *c.kappa;
  if (c.audit_level) j["audit_level"] = *c.audit_level;
  if (c.stability_factor) j["stability_factor"] = *c.stability_factor;
  if (c.refinement_tolerance) j["refinement_tolerance"] = *c.refinement_tolerance;
  if (c.output) j["output"] = *c.output;
  return j.dump(2) + "\n";
}

GaugeSpec parse_gauge_spec(const std::string& json_text, const std::string& field) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("gauge spec is not valid JSON: ") + e.what());
  }
  return gauge_from_json(j, field);
}

}  // namespace bdglab::cli
