#include "edgestat/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "edgestat/errors.hpp"
#include "edgestat/quadrature.hpp"
#include "edgestat/rng.hpp"

namespace edgestat {

namespace {

constexpr int kMeasureNodes = 192;

// Chebyshev interpolant of f on [lo, hi], degree doubled from 32 until the
// off-grid residual is below tol.
ChebyshevSeries adaptive_interpolant(const std::function<double(double)>& f, double lo, double hi, double tol) {
  ChebyshevSeries s;
  for (int degree = 32; degree <= 512; degree *= 2) {
    s = ChebyshevSeries::interpolate(f, lo, hi, degree);
    if (s.max_residual(f) <= tol) return s;
  }
  throw NumericalError(ErrorCode::ToleranceExceeded, "Chebyshev interpolant did not resolve the function");
}

}  // namespace

HoeffdingStatistic::HoeffdingStatistic(InteractionSpec h, std::shared_ptr<const EquilibriumSolution> mu)
    : h_(std::move(h)), mu_(std::move(mu)) {
  if (!mu_) throw ValidationError("HoeffdingStatistic: missing measure");
  rule_ = mu_->measure_rule(kMeasureNodes);
  const double L = mu_->field().L();
  const QuadratureRule& rule = rule_;
  const InteractionSpec& hh = h_;
  auto direct = [&rule, &hh](double t) { return rule.integrate([&](double s) { return hh.h(t - s); }); };
  double scale = 0.0;
  for (const GaussianTerm& g : h_.terms()) scale += std::abs(g.c);
  h_mu_ = adaptive_interpolant(direct, -L, L, 1e-14 * std::max(scale, 1e-300));
  double hmm = 0.0;
  for (std::size_t k = 0; k < rule_.size(); ++k) hmm += rule_.weights[k] * direct(rule_.nodes[k]);
  h_mumu_ = hmm;

  cutoff_ = h_.fourier_cutoff(1e-16);
  if (cutoff_ > 0.0) {
    phi_re_ = adaptive_interpolant(
        [&rule](double t) { return rule.integrate([t](double s) { return std::cos(t * s); }); }, 0.0, cutoff_,
        1e-14);
    phi_im_ = adaptive_interpolant(
        [&rule](double t) { return rule.integrate([t](double s) { return std::sin(t * s); }); }, 0.0, cutoff_,
        1e-14);
  }
}

double HoeffdingStatistic::h_mu(double t) const { return h_mu_(t); }

std::complex<double> HoeffdingStatistic::characteristic(double t) const {
  if (t >= 0.0 && t <= cutoff_ && cutoff_ > 0.0) return {phi_re_(t), phi_im_(t)};
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < rule_.size(); ++k) {
    re += rule_.weights[k] * std::cos(t * rule_.nodes[k]);
    im += rule_.weights[k] * std::sin(t * rule_.nodes[k]);
  }
  return {re, im};
}

double hoeffding_bracket(std::span<const double> x, const HoeffdingStatistic& stat) {
  const std::size_t n = x.size();
  const double N = static_cast<double>(n);
  const InteractionSpec& h = stat.interaction();
  std::vector<double> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) r += h.h(x[i] - x[j]);
    rows[i] = r - 2.0 * N * stat.h_mu(x[i]) + N * stat.h_mumu();
  }
  return pairwise_sum(rows);
}

double hoeffding_U(std::span<const double> x, const HoeffdingStatistic& stat) {
  return -0.5 * hoeffding_bracket(x, stat);
}

double fourier_U(std::span<const double> x, const HoeffdingStatistic& stat) {
  const InteractionSpec& h = stat.interaction();
  const double S = stat.fourier_cutoff();
  if (h.is_zero() || S <= 0.0) return 0.0;
  const double N = static_cast<double>(x.size());
  auto integrand = [&](double t) {
    double re = 0.0;
    double im = 0.0;
    for (double xj : x) {
      re += std::cos(t * xj);
      im += std::sin(t * xj);
    }
    const std::complex<double> phi = stat.characteristic(t);
    re -= N * phi.real();
    im -= N * phi.imag();
    return (re * re + im * im) * h.fourier(t);
  };
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-15;
  const double integral = adaptive_gauss_legendre(integrand, 0.0, S, opt);
  return -integral / std::sqrt(2.0 * std::numbers::pi);
}

double u_z(std::span<const double> x, double z, const HoeffdingStatistic& plus, const HoeffdingStatistic& minus) {
  return 0.5 * z * hoeffding_bracket(x, plus) + 0.5 * hoeffding_bracket(x, minus);
}

double u_z(std::span<const double> x, double z, const SplitInteraction& split,
           std::shared_ptr<const EquilibriumSolution> mu) {
  return u_z(x, z, HoeffdingStatistic(split.plus, mu), HoeffdingStatistic(split.minus, mu));
}

SpectralSampler::SpectralSampler(InteractionSpec h, std::shared_ptr<const EquilibriumSolution> mu,
                                 const SamplerOptions& options) {
  if (!mu) throw ValidationError("SpectralSampler: missing measure");
  if (options.nodes < 1) throw ValidationError("SpectralSampler: need at least one node");
  auto d = std::make_shared<Data>();
  d->h = std::move(h);
  d->mu = std::move(mu);
  d->L = d->mu->field().L();
  d->cutoff = d->h.fourier_cutoff(options.threshold);
  if (d->cutoff > 0.0) {
    const QuadratureRule rule = gauss_legendre(options.nodes, 0.0, d->cutoff);
    const QuadratureRule mrule = d->mu->measure_rule(kMeasureNodes);
    const double c = std::pow(2.0 / std::numbers::pi, 0.25);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double s = rule.nodes[k];
      const double neg = -d->h.fourier(s);
      if (neg < 0.0) {
        throw NumericalError(ErrorCode::DefinitenessViolation,
                             "-hhat(" + std::to_string(s) + ") = " + std::to_string(neg) + " is negative");
      }
      d->nodes.push_back(s);
      d->amplitudes.push_back(c * std::sqrt(neg * rule.weights[k]));
      d->cos_mean.push_back(mrule.integrate([s](double t) { return std::cos(s * t); }));
      d->sin_mean.push_back(mrule.integrate([s](double t) { return std::sin(s * t); }));
    }
  }
  data_ = std::move(d);
}

double SpectralSampler::variance() const {
  double v = 0.0;
  for (double a : data_->amplitudes) v += a * a;
  return v;
}

double SpectralSampler::covariance(double t) const {
  double v = 0.0;
  for (std::size_t k = 0; k < data_->nodes.size(); ++k) {
    v += data_->amplitudes[k] * data_->amplitudes[k] * std::cos(t * data_->nodes[k]);
  }
  return v;
}

FieldSample::FieldSample(std::shared_ptr<const SpectralSampler::Data> data, std::vector<double> xi,
                         std::vector<double> eta)
    : data_(std::move(data)), xi_(std::move(xi)), eta_(std::move(eta)) {
  if (xi_.size() != data_->nodes.size() || eta_.size() != data_->nodes.size()) {
    throw ValidationError("FieldSample: draw vectors do not match the sampler size");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < xi_.size(); ++k) {
    m += data_->amplitudes[k] * (data_->cos_mean[k] * xi_[k] + data_->sin_mean[k] * eta_[k]);
  }
  centering_ = m;
}

double FieldSample::raw(double t) const {
  double v = 0.0;
  const auto& s = data_->nodes;
  const auto& a = data_->amplitudes;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double arg = t * s[k];
    v += a[k] * (std::cos(arg) * xi_[k] + std::sin(arg) * eta_[k]);
  }
  return v;
}

double FieldSample::derivative(double t) const {
  double v = 0.0;
  const auto& s = data_->nodes;
  const auto& a = data_->amplitudes;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double arg = t * s[k];
    v += a[k] * s[k] * (-std::sin(arg) * xi_[k] + std::cos(arg) * eta_[k]);
  }
  return v;
}

double FieldSample::sup_norm(int samples) const {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = -data_->L + 2.0 * data_->L * i / (samples - 1);
    m = std::max(m, std::abs((*this)(t)));
  }
  return m;
}

double FieldSample::linear_statistic(std::span<const double> x) const {
  double v = 0.0;
  for (double xj : x) v += (*this)(xj);
  return v;
}

FieldSample sample_field(const SpectralSampler& sampler, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int M = sampler.size();
  std::vector<double> xi(M);
  std::vector<double> eta(M);
  for (int k = 0; k < M; ++k) {
    xi[k] = normal(rng);
    eta[k] = normal(rng);
  }
  return FieldSample(sampler.shared(), std::move(xi), std::move(eta));
}

FieldSample sample_field(const SpectralSampler& sampler, std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng = make_stream(seed, index);
  return sample_field(sampler, rng);
}

double discrete_variance(std::span<const double> x, const SpectralSampler& sampler) {
  const SpectralSampler::Data& d = sampler.data();
  const double N = static_cast<double>(x.size());
  std::vector<double> terms(d.nodes.size());
  for (std::size_t k = 0; k < d.nodes.size(); ++k) {
    double c = 0.0;
    double s = 0.0;
    for (double xj : x) {
      c += std::cos(xj * d.nodes[k]);
      s += std::sin(xj * d.nodes[k]);
    }
    c -= N * d.cos_mean[k];
    s -= N * d.sin_mean[k];
    terms[k] = d.amplitudes[k] * d.amplitudes[k] * (c * c + s * s);
  }
  return pairwise_sum(terms);
}

LinearizationReport linearization_check(std::span<const double> x, const SpectralSampler& sampler,
                                        const LinearizationOptions& options) {
  if (!sampler.interaction().negative_definite()) {
    throw NumericalError(ErrorCode::DefinitenessViolation, "linearization_check: h is not negative-definite");
  }
  const HoeffdingStatistic stat(sampler.interaction(), sampler.measure());
  LinearizationReport r;
  r.variance = discrete_variance(x, sampler);
  const double U = hoeffding_U(x, stat);
  r.two_U = 2.0 * U;
  r.exp_U = std::exp(U);
  r.difference = std::abs(r.variance - r.two_U);
  r.tolerance = options.tolerance;
  r.pass = r.difference <= options.tolerance;
  if (options.mc_samples > 0) {
    std::vector<double> values(options.mc_samples);
    std::vector<double> squares(options.mc_samples);
    for (int i = 0; i < options.mc_samples; ++i) {
      const FieldSample f = sample_field(sampler, options.seed, static_cast<std::uint64_t>(i));
      values[i] = std::exp(f.linear_statistic(x));
      squares[i] = values[i] * values[i];
    }
    const double n = options.mc_samples;
    r.mc_samples = options.mc_samples;
    r.mc_mean = pairwise_sum(values) / n;
    const double var = std::max(pairwise_sum(squares) / n - r.mc_mean * r.mc_mean, 0.0);
    r.mc_standard_error = std::sqrt(var / n);
  }
  if (!r.pass && options.throw_on_failure) {
    throw NumericalError(ErrorCode::ToleranceExceeded,
                         "Var(sum f) and 2U differ by " + std::to_string(r.difference));
  }
  return r;
}

WeightedAverage weighted_average(std::vector<WeightedValue> terms) {
  WeightedAverage out;
  const std::size_t n = terms.size();
  out.samples = static_cast<int>(n);
  if (n == 0) return out;
  std::sort(terms.begin(), terms.end(), [](const WeightedValue& a, const WeightedValue& b) {
    return a.log_weight < b.log_weight || (a.log_weight == b.log_weight && a.value < b.value);
  });
  double shift = -std::numeric_limits<double>::infinity();
  for (const WeightedValue& t : terms) shift = std::max(shift, t.log_weight);
  std::vector<double> w(n);
  std::vector<double> wv(n);
  std::vector<double> w2(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(terms[i].log_weight - shift);
    wv[i] = w[i] * terms[i].value;
    w2[i] = w[i] * w[i];
  }
  const double sw = pairwise_sum(w);
  const double swv = pairwise_sum(wv);
  const double sw2 = pairwise_sum(w2);
  out.estimate = swv / sw;
  out.ess = sw * sw / sw2;
  out.log_mean_weight = std::log(sw / static_cast<double>(n)) + shift;
  if (n > 1) {
    const double mean_w = sw / static_cast<double>(n);
    const double var_w = std::max(sw2 / static_cast<double>(n) - mean_w * mean_w, 0.0);
    out.mean_weight_se = std::sqrt(var_w / static_cast<double>(n - 1)) / mean_w;
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) loo[i] = (swv - wv[i]) / (sw - w[i]);
    const double mean = pairwise_sum(loo) / static_cast<double>(n);
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = (loo[i] - mean) * (loo[i] - mean);
    out.standard_error = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) * pairwise_sum(dev));
  }
  return out;
}

DeterminantalAverage average_determinantal(const KernelStatistic& statistic, const SpectralSampler& sampler,
                                           const AverageOptions& options) {
  if (options.samples < 2) throw ValidationError("average_determinantal: need at least two samples");
  if (!sampler.interaction().negative_definite()) {
    throw NumericalError(ErrorCode::DefinitenessViolation, "average_determinantal: h is not negative-definite");
  }
  const auto sol = sampler.measure();
  const WeightSpec base = make_weight(sol, options.N, options.L);
  const RecurrenceTable base_table = recurrence(base, options.N);
  DeterminantalAverage out;
  out.unperturbed = statistic(CDKernel(base, base_table));
  out.terms.resize(options.samples);
  for (int i = 0; i < options.samples; ++i) {
    const FieldSample field = sample_field(sampler, options.seed, static_cast<std::uint64_t>(i));
    // The recurrence grid evaluates f a few thousand times; a Chebyshev copy
    // is exact to rounding for these band-limited sums and far cheaper.
    auto f = std::make_shared<const ChebyshevSeries>(
        adaptive_interpolant([&field](double t) { return field(t); }, -options.L, options.L, 1e-13));
    const WeightSpec w = make_weight(sol, options.N, options.L, [f](double t) { return (*f)(t); });
    RecurrenceTable table = recurrence(w, options.N);
    out.terms[i].log_weight = log_partition_ratio(table, base_table, options.N).value;
    out.terms[i].value = statistic(CDKernel(w, std::move(table)));
  }
  out.average = weighted_average(out.terms);
  if (out.average.ess < options.min_ess_fraction * options.samples) {
    throw NumericalError(ErrorCode::EffectiveSampleSizeTooSmall,
                         "effective sample size " + std::to_string(out.average.ess) + " of " +
                             std::to_string(options.samples));
  }
  return out;
}

}  // namespace edgestat
