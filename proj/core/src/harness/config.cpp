#include "edgestat/harness/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "edgestat/errors.hpp"

namespace edgestat {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError("config: missing field '" + path + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& name) {
  if (!j.is_number()) throw ValidationError("config: field '" + name + "' must be a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& name) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw ValidationError("config: field '" + name + "' must be an integer");
  }
  return j.get<long>();
}

}  // namespace

EnsembleConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be an object");
  EnsembleConfig c;
  c.N = static_cast<int>(integer(require(j, "N", ""), "N"));
  c.L = number(require(j, "L", ""), "L");
  const json& seed = require(j, "seed", "");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw ValidationError("config: field 'seed' must be a non-negative integer");
  }
  c.seed = seed.get<std::uint64_t>();

  const json& q = require(j, "Q", "");
  const json& coeffs = require(q, "coeffs", "Q.");
  if (!coeffs.is_array()) throw ValidationError("config: field 'Q.coeffs' must be an array");
  std::vector<double> qc;
  for (const json& v : coeffs) qc.push_back(number(v, "Q.coeffs"));
  c.Q = ConfiningField(std::move(qc));

  if (j.contains("h")) {
    const json& terms = require(j.at("h"), "terms", "h.");
    if (!terms.is_array()) throw ValidationError("config: field 'h.terms' must be an array");
    std::vector<GaussianTerm> t;
    for (const json& term : terms) {
      t.push_back({number(require(term, "c", "h.terms[]."), "h.terms[].c"),
                   number(require(term, "sigma", "h.terms[]."), "h.terms[].sigma")});
    }
    c.h = InteractionSpec(std::move(t));
  }

  if (j.contains("mcmc")) {
    const json& m = j.at("mcmc");
    c.has_mcmc = true;
    c.mcmc.chains = static_cast<int>(integer(require(m, "chains", "mcmc."), "mcmc.chains"));
    c.mcmc.steps = integer(require(m, "steps", "mcmc."), "mcmc.steps");
    c.mcmc.burnin = integer(require(m, "burnin", "mcmc."), "mcmc.burnin");
    c.mcmc.thin = static_cast<int>(integer(require(m, "thin", "mcmc."), "mcmc.thin"));
    if (m.contains("scale")) c.mcmc.initial_scale = number(m.at("scale"), "mcmc.scale");
  }

  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    if (!e.is_object()) throw ValidationError("config: field 'experiment' must be an object");
    if (e.contains("type")) {
      if (!e.at("type").is_string()) throw ValidationError("config: field 'experiment.type' must be a string");
      c.experiment.type = e.at("type").get<std::string>();
    }
    if (e.contains("grid")) {
      if (!e.at("grid").is_array()) throw ValidationError("config: field 'experiment.grid' must be an array");
      for (const json& v : e.at("grid")) c.experiment.grid.push_back(number(v, "experiment.grid"));
    }
    if (e.contains("delta")) c.experiment.delta = number(e.at("delta"), "experiment.delta");
  }
  validate(c, false);
  return c;
}

EnsembleConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const EnsembleConfig& c) {
  json j = json::object();
  j["N"] = c.N;
  j["L"] = c.L;
  j["seed"] = c.seed;
  j["Q"] = {{"coeffs", c.Q.coefficients()}};
  json terms = json::array();
  for (const GaussianTerm& t : c.h.terms()) terms.push_back({{"c", t.c}, {"sigma", t.sigma}});
  j["h"] = {{"terms", terms}};
  if (c.has_mcmc) {
    j["mcmc"] = {{"chains", c.mcmc.chains},
                 {"steps", c.mcmc.steps},
                 {"burnin", c.mcmc.burnin},
                 {"thin", c.mcmc.thin},
                 {"scale", c.mcmc.initial_scale}};
  }
  j["experiment"] = {{"type", c.experiment.type}, {"grid", c.experiment.grid}, {"delta", c.experiment.delta}};
  return j.dump(2);
}

void validate(const EnsembleConfig& c, bool need_mcmc) {
  if (c.N < 2) throw ValidationError("config: field 'N' must be at least 2");
  if (!(c.L > 0.0)) throw ValidationError("config: field 'L' must be positive");
  if (!need_mcmc) return;
  if (!c.has_mcmc) throw ValidationError("config: missing field 'mcmc'");
  if (c.mcmc.chains < 1) throw ValidationError("config: field 'mcmc.chains' must be at least 1");
  if (c.mcmc.thin < 1) throw ValidationError("config: field 'mcmc.thin' must be at least 1");
  if (c.mcmc.burnin < 0 || c.mcmc.burnin >= c.mcmc.steps) {
    throw ValidationError("config: field 'mcmc.burnin' must satisfy 0 <= burnin < steps");
  }
}

void validate_box(const EnsembleConfig& c, double b) {
  if (!(c.L > b + 0.5)) {
    throw ValidationError("config: field 'L' must exceed b + 0.5 = " + std::to_string(b + 0.5));
  }
}

}  // namespace edgestat
