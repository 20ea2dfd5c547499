#ifndef EDGESTAT_HARNESS_CONFIG_HPP
#define EDGESTAT_HARNESS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edgestat/fields.hpp"

namespace edgestat {

struct McmcSettings {
  int chains = 4;
  long steps = 0;   // sweeps per chain, burn-in included; one sweep updates every coordinate once
  long burnin = 0;  // sweeps
  int thin = 1;     // keep every thin-th sweep after burn-in
  double initial_scale = 0.0;  // 0: 1/N
  double target_acceptance = 0.4;
};

struct ExperimentSpec {
  std::string type;          // "edge", "tail", ...; free-form
  std::vector<double> grid;  // locations, meaning depends on the subcommand
  double delta = 0.0;        // bin half-width where a statistic needs one
};

struct EnsembleConfig {
  int N = 0;
  double L = 0.0;
  std::uint64_t seed = 0;
  ConfiningField Q = ConfiningField::gaussian();
  InteractionSpec h;
  McmcSettings mcmc;
  bool has_mcmc = false;
  ExperimentSpec experiment;
};

/// Parse the JSON config. Throws ValidationError naming the offending field.
EnsembleConfig parse_config(std::string_view json_text);
EnsembleConfig load_config(const std::string& path);

/// JSON echo of a config, stable key order.
std::string config_to_json(const EnsembleConfig& config);

/// N >= 2, L > 0, and for MCMC use chains >= 1, thin >= 1, 0 <= burn-in < steps.
void validate(const EnsembleConfig& config, bool need_mcmc);

/// L > b + 0.5 for the right endpoint b of the solved equilibrium.
void validate_box(const EnsembleConfig& config, double b);

}  // namespace edgestat

#endif  // EDGESTAT_HARNESS_CONFIG_HPP
