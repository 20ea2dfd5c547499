#ifndef EDGESTAT_HARNESS_MCMC_HPP
#define EDGESTAT_HARNESS_MCMC_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "edgestat/fields.hpp"
#include "edgestat/harness/config.hpp"
#include "edgestat/harness/stats.hpp"

namespace edgestat {

/// 2 sum_{i<j} log|x_i - x_j| - N sum Q(x_j) - sum_{i<j} h(x_i - x_j), N = x.size().
/// -inf for coincident coordinates.
double log_density(std::span<const double> x, const ConfiningField& Q, const InteractionSpec& h);
/// Same, and -inf outside [-L, L]^N. N must equal config.N.
double log_density(std::span<const double> x, const EnsembleConfig& config);

/// Single-coordinate random-walk Metropolis on [-L, L]^N.
class Chain {
 public:
  Chain(const EnsembleConfig& config, std::vector<double> x0, std::mt19937_64 rng);

  /// One sweep: every coordinate proposed once, in index order. During adaptation
  /// the per-coordinate scales are tuned towards the target acceptance.
  void sweep(bool adapt);

  /// One Metropolis proposal for coordinate i with its current scale.
  void update(std::size_t i);

  [[nodiscard]] std::span<const double> state() const noexcept { return x_; }
  [[nodiscard]] double cached_log_density() const noexcept { return logp_; }
  [[nodiscard]] double x_max() const;
  [[nodiscard]] double acceptance() const noexcept;
  [[nodiscard]] long updates() const noexcept { return updates_; }
  [[nodiscard]] const std::vector<double>& scales() const noexcept { return scale_; }
  /// Largest |cached - recomputed| seen at the periodic checks.
  [[nodiscard]] double max_cache_drift() const noexcept { return max_drift_; }

 private:
  void check_cache();

  const ConfiningField Q_;
  const InteractionSpec h_;
  const double L_;
  const double N_;
  const double target_;
  std::vector<double> x_;
  std::vector<double> scale_;
  std::vector<int> window_accepts_;
  int window_sweeps_ = 0;
  int adapt_batches_ = 0;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  double logp_ = 0.0;
  long updates_ = 0;
  long accepted_ = 0;
  long proposed_ = 0;
  double max_drift_ = 0.0;
};

struct ChainResult {
  std::vector<double> x_max;                    // one per retained sweep
  std::vector<std::vector<double>> configurations;  // when requested
  double acceptance = 0.0;
  Autocorrelation autocorrelation;  // of x_max, in retained samples
  double max_cache_drift = 0.0;
};

struct McmcResult {
  std::vector<ChainResult> chains;
  double ess = 0.0;  // sum over chains
  bool mixing_warning = false;
  std::vector<std::string> warnings;

  /// x_max samples of all chains in chain order.
  [[nodiscard]] std::vector<double> pooled_x_max() const;
};

using SampleObserver = std::function<void(int chain, std::span<const double> x)>;

struct McmcOptions {
  bool keep_configurations = false;
  SampleObserver observer;  // called on every retained configuration
};

/// Start configuration: quantiles of the semicircle law on the support of Q.
std::vector<double> initial_configuration(const EnsembleConfig& config);

/// Runs config.mcmc.chains chains seeded from (config.seed, chain index).
/// Sets mixing_warning when tau_int of x_max exceeds 50 retained samples
/// (that is, thin x 50 sweeps).
McmcResult run_mcmc(const EnsembleConfig& config, const McmcOptions& options = {});

}  // namespace edgestat

#endif  // EDGESTAT_HARNESS_MCMC_HPP
