#ifndef EDGESTAT_LINEARIZE_HPP
#define EDGESTAT_LINEARIZE_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "edgestat/cdkernel.hpp"
#include "edgestat/chebyshev.hpp"
#include "edgestat/equilibrium.hpp"
#include "edgestat/fields.hpp"

namespace edgestat {

/// h_mu as an interpolant, h_mumu, and the characteristic function of mu.
class HoeffdingStatistic {
 public:
  HoeffdingStatistic(InteractionSpec h, std::shared_ptr<const EquilibriumSolution> mu);

  [[nodiscard]] const InteractionSpec& interaction() const noexcept { return h_; }
  [[nodiscard]] const EquilibriumSolution& measure() const noexcept { return *mu_; }
  [[nodiscard]] std::shared_ptr<const EquilibriumSolution> measure_ptr() const noexcept { return mu_; }

  [[nodiscard]] double h_mu(double t) const;
  [[nodiscard]] double h_mumu() const noexcept { return h_mumu_; }
  /// int e^{its} dmu(s) for 0 <= t <= fourier_cutoff(); direct quadrature beyond.
  [[nodiscard]] std::complex<double> characteristic(double t) const;
  [[nodiscard]] double fourier_cutoff() const noexcept { return cutoff_; }

 private:
  InteractionSpec h_;
  std::shared_ptr<const EquilibriumSolution> mu_;
  QuadratureRule rule_;
  ChebyshevSeries h_mu_;
  ChebyshevSeries phi_re_;
  ChebyshevSeries phi_im_;
  double h_mumu_ = 0.0;
  double cutoff_ = 0.0;
};

/// sum_{i,j} [h(x_i - x_j) - h_mu(x_i) - h_mu(x_j) + h_mumu].
double hoeffding_bracket(std::span<const double> x, const HoeffdingStatistic& stat);

/// U(x) = -1/2 of the bracket, by the double sum.
double hoeffding_U(std::span<const double> x, const HoeffdingStatistic& stat);

/// U(x) by the Fourier route: -(2 pi)^{-1/2} int_0^inf |sum e^{itx_j} - N phi_mu(t)|^2 hhat(t) dt.
double fourier_U(std::span<const double> x, const HoeffdingStatistic& stat);

/// U_z = (z/2) B[h+] + (1/2) B[h-] with B the bracket; U_{-1} = U.
double u_z(std::span<const double> x, double z, const HoeffdingStatistic& plus, const HoeffdingStatistic& minus);
double u_z(std::span<const double> x, double z, const SplitInteraction& split,
           std::shared_ptr<const EquilibriumSolution> mu);

struct SamplerOptions {
  int nodes = 256;
  double threshold = 1e-16;  // S is the first point beyond which |hhat| stays below this
};

/// Gauss-Legendre discretisation of the spectral representation of the
/// stationary Gaussian process with covariance -h.
class SpectralSampler {
 public:
  struct Data {
    InteractionSpec h;
    std::shared_ptr<const EquilibriumSolution> mu;
    double cutoff = 0.0;
    double L = 0.0;
    std::vector<double> nodes;
    std::vector<double> amplitudes;  // (2/pi)^{1/4} sqrt(-hhat(s_k) w_k)
    std::vector<double> cos_mean;    // int cos(s_k t) dmu(t)
    std::vector<double> sin_mean;
  };

  /// Throws DefinitenessViolation if -hhat < 0 at a node.
  SpectralSampler(InteractionSpec h, std::shared_ptr<const EquilibriumSolution> mu, const SamplerOptions& options = {});

  [[nodiscard]] int size() const noexcept { return static_cast<int>(data_->nodes.size()); }
  [[nodiscard]] const Data& data() const noexcept { return *data_; }
  [[nodiscard]] std::shared_ptr<const Data> shared() const noexcept { return data_; }
  [[nodiscard]] const InteractionSpec& interaction() const noexcept { return data_->h; }
  [[nodiscard]] std::shared_ptr<const EquilibriumSolution> measure() const noexcept { return data_->mu; }

  /// sum_k A_k^2, the variance of the discretised field at any point.
  [[nodiscard]] double variance() const;
  /// Covariance of the discretised field at lag t.
  [[nodiscard]] double covariance(double t) const;

 private:
  std::shared_ptr<const Data> data_;
};

class FieldSample {
 public:
  FieldSample(std::shared_ptr<const SpectralSampler::Data> data, std::vector<double> xi, std::vector<double> eta);

  /// f~(t) = sum_k A_k (cos(t s_k) xi_k + sin(t s_k) eta_k).
  [[nodiscard]] double raw(double t) const;
  /// f(t) = f~(t) - int f~ dmu.
  [[nodiscard]] double operator()(double t) const { return raw(t) - centering_; }
  [[nodiscard]] double derivative(double t) const;
  [[nodiscard]] double centering() const noexcept { return centering_; }
  /// max |f| over a uniform grid of [-L, L].
  [[nodiscard]] double sup_norm(int samples = 2001) const;
  /// sum_j f(x_j).
  [[nodiscard]] double linear_statistic(std::span<const double> x) const;

  [[nodiscard]] const std::vector<double>& xi() const noexcept { return xi_; }
  [[nodiscard]] const std::vector<double>& eta() const noexcept { return eta_; }

 private:
  std::shared_ptr<const SpectralSampler::Data> data_;
  std::vector<double> xi_;
  std::vector<double> eta_;
  double centering_ = 0.0;
};

FieldSample sample_field(const SpectralSampler& sampler, std::mt19937_64& rng);
/// Sample number `index` of the stream family `seed`.
FieldSample sample_field(const SpectralSampler& sampler, std::uint64_t seed, std::uint64_t index);

/// Variance of sum_j f(x_j) under the discretised field, in closed form.
double discrete_variance(std::span<const double> x, const SpectralSampler& sampler);

struct LinearizationReport {
  double variance = 0.0;  // exact variance of sum f(x_j) under the discretised field
  double two_U = 0.0;
  double difference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int mc_samples = 0;
  double mc_mean = 0.0;  // mean of exp(sum f(x_j))
  double mc_standard_error = 0.0;
  double exp_U = 0.0;
};

struct LinearizationOptions {
  double tolerance = 1e-6;
  int mc_samples = 0;
  std::uint64_t seed = 0;
  bool throw_on_failure = true;
};

/// Var(sum f(x_j)) against 2 U(x). Throws ToleranceExceeded unless disabled.
LinearizationReport linearization_check(std::span<const double> x, const SpectralSampler& sampler,
                                        const LinearizationOptions& options = {});

struct WeightedValue {
  double log_weight = 0.0;
  double value = 0.0;
};

struct WeightedAverage {
  double estimate = 0.0;
  double standard_error = 0.0;  // delete-one jackknife
  double ess = 0.0;
  double log_mean_weight = 0.0;  // log of the plain mean of the weights
  double mean_weight_se = 0.0;   // standard error of the mean weight, relative to it
  int samples = 0;
};

/// Self-normalised average of values; the result does not depend on the order of terms.
WeightedAverage weighted_average(std::vector<WeightedValue> terms);

using KernelStatistic = std::function<double(const CDKernel&)>;

struct AverageOptions {
  int N = 0;
  double L = 0.0;
  int samples = 100;
  std::uint64_t seed = 0;
  double min_ess_fraction = 0.1;
};

struct DeterminantalAverage {
  WeightedAverage average;
  double unperturbed = 0.0;  // statistic for f = 0
  std::vector<WeightedValue> terms;
};

/// E^h[statistic] as the average of the statistic over the determinantal
/// ensembles of exp(-N V + f), weighted by Z_{V - f/N} / Z_V.
/// Throws EffectiveSampleSizeTooSmall.
DeterminantalAverage average_determinantal(const KernelStatistic& statistic, const SpectralSampler& sampler,
                                           const AverageOptions& options);

}  // namespace edgestat

#endif  // EDGESTAT_LINEARIZE_HPP
