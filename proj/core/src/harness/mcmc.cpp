#include "edgestat/harness/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "edgestat/equilibrium.hpp"
#include "edgestat/errors.hpp"
#include "edgestat/rng.hpp"

namespace edgestat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long kCacheCheckEvery = 10000;
constexpr int kAdaptWindow = 20;  // sweeps per scale update

}  // namespace

double log_density(std::span<const double> x, const ConfiningField& Q, const InteractionSpec& h) {
  const std::size_t n = x.size();
  const double N = static_cast<double>(n);
  double logs = 0.0;
  double pair = 0.0;
  double field = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    field += Q.value(x[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(x[i] - x[j]);
      if (d == 0.0) return kNegInf;
      logs += std::log(d);
      pair += h.h(x[i] - x[j]);
    }
  }
  return 2.0 * logs - N * field - pair;
}

double log_density(std::span<const double> x, const EnsembleConfig& config) {
  if (static_cast<int>(x.size()) != config.N) throw ValidationError("log_density: configuration size differs from N");
  for (double v : x) {
    if (!(std::abs(v) <= config.L)) return kNegInf;
  }
  return log_density(x, config.Q, config.h);
}

Chain::Chain(const EnsembleConfig& config, std::vector<double> x0, std::mt19937_64 rng)
    : Q_(config.Q),
      h_(config.h),
      L_(config.L),
      N_(static_cast<double>(config.N)),
      target_(config.mcmc.target_acceptance),
      x_(std::move(x0)),
      rng_(std::move(rng)) {
  if (static_cast<int>(x_.size()) != config.N) throw ValidationError("Chain: start configuration has the wrong size");
  logp_ = log_density(x_, config);
  if (!std::isfinite(logp_)) throw ValidationError("Chain: start configuration has zero density");
  const double s0 = config.mcmc.initial_scale > 0.0 ? config.mcmc.initial_scale : 1.0 / N_;
  scale_.assign(x_.size(), s0);
  window_accepts_.assign(x_.size(), 0);
}

double Chain::x_max() const { return *std::max_element(x_.begin(), x_.end()); }

double Chain::acceptance() const noexcept {
  return proposed_ > 0 ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 0.0;
}

void Chain::update(std::size_t i) {
  ++proposed_;
  ++updates_;
  const double old = x_[i];
  const double y = old + scale_[i] * normal_(rng_);
  bool accept = false;
  double delta = 0.0;
  if (std::abs(y) <= L_) {
    // Products of distance ratios in short blocks keep one log per block.
    double log_ratio = 0.0;
    double prod = 1.0;
    double dh = 0.0;
    int in_block = 0;
    bool coincident = false;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      if (j == i) continue;
      const double dn = std::abs(y - x_[j]);
      if (dn == 0.0) {
        coincident = true;
        break;
      }
      prod *= dn / std::abs(old - x_[j]);
      if (++in_block == 16) {
        log_ratio += std::log(prod);
        prod = 1.0;
        in_block = 0;
      }
      dh += h_.h(y - x_[j]) - h_.h(old - x_[j]);
    }
    if (!coincident) {
      log_ratio += std::log(prod);
      delta = 2.0 * log_ratio - N_ * (Q_.value(y) - Q_.value(old)) - dh;
      accept = delta >= 0.0 || uniform_(rng_) < std::exp(delta);
    }
  }
  if (accept) {
    x_[i] = y;
    logp_ += delta;
    ++accepted_;
    ++window_accepts_[i];
  }
  if (updates_ % kCacheCheckEvery == 0) check_cache();
}

void Chain::check_cache() {
  const double fresh = log_density(x_, Q_, h_);
  const double drift = std::abs(fresh - logp_);
  max_drift_ = std::max(max_drift_, drift);
  if (!(drift <= 1e-8)) {
    throw NumericalError(ErrorCode::InvariantViolation,
                         "cached log-density drifted by " + std::to_string(drift) + " from recomputation");
  }
  logp_ = fresh;
}

void Chain::sweep(bool adapt) {
  for (std::size_t i = 0; i < x_.size(); ++i) update(i);
  if (!adapt) return;
  if (++window_sweeps_ < kAdaptWindow) return;
  ++adapt_batches_;
  const double gain = std::min(1.0, 3.0 / std::sqrt(static_cast<double>(adapt_batches_)));
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double rate = static_cast<double>(window_accepts_[i]) / kAdaptWindow;
    scale_[i] = std::clamp(scale_[i] * std::exp(gain * (rate - target_)), 1e-6, L_);
    window_accepts_[i] = 0;
  }
  window_sweeps_ = 0;
}

std::vector<double> McmcResult::pooled_x_max() const {
  std::vector<double> out;
  for (const ChainResult& c : chains) out.insert(out.end(), c.x_max.begin(), c.x_max.end());
  return out;
}

std::vector<double> initial_configuration(const EnsembleConfig& config) {
  const EndpointResult e = solve_endpoints(SmoothField(config.Q, std::max(50.0, config.L)));
  const double c = 0.5 * (e.a + e.b);
  const double r = 0.5 * (e.b - e.a);
  std::vector<double> x(config.N);
  for (int i = 0; i < config.N; ++i) {
    // Quantiles of the semicircle law: F(u) = 1/2 + (u sqrt(1-u^2) + asin u)/pi, solved by bisection.
    const double target = (i + 0.5) / config.N;
    double lo = -1.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double u = 0.5 * (lo + hi);
      const double F = 0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / std::numbers::pi;
      (F < target ? lo : hi) = u;
    }
    x[i] = std::clamp(c + r * 0.5 * (lo + hi), -config.L * 0.999, config.L * 0.999);
  }
  return x;
}

McmcResult run_mcmc(const EnsembleConfig& config, const McmcOptions& options) {
  validate(config, true);
  McmcResult out;
  const std::vector<double> x0 = initial_configuration(config);
  for (int c = 0; c < config.mcmc.chains; ++c) {
    Chain chain(config, x0, make_stream(config.seed, static_cast<std::uint64_t>(c)));
    ChainResult r;
    for (long s = 0; s < config.mcmc.burnin; ++s) chain.sweep(true);
    for (long s = config.mcmc.burnin; s < config.mcmc.steps; ++s) {
      chain.sweep(false);
      if ((s - config.mcmc.burnin + 1) % config.mcmc.thin != 0) continue;
      r.x_max.push_back(chain.x_max());
      if (options.keep_configurations) r.configurations.emplace_back(chain.state().begin(), chain.state().end());
      if (options.observer) options.observer(c, chain.state());
    }
    r.acceptance = chain.acceptance();
    r.autocorrelation = integrated_autocorrelation(r.x_max);
    r.max_cache_drift = chain.max_cache_drift();
    out.ess += r.autocorrelation.ess;
    if (r.autocorrelation.tau > 50.0) {
      out.mixing_warning = true;
      out.warnings.push_back("MixingWarning: chain " + std::to_string(c) + " has tau_int(x_max) = " +
                             std::to_string(r.autocorrelation.tau * config.mcmc.thin) + " sweeps, above 50 x thin");
    }
    out.chains.push_back(std::move(r));
  }
  return out;
}

}  // namespace edgestat
