#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "check.hpp"
#include "doctest.h"
#include "edgestat/airy.hpp"
#include "edgestat/cdkernel.hpp"
#include "edgestat/errors.hpp"
#include "edgestat/quadrature.hpp"
#include "gue.hpp"

using namespace edgestat;
using edgestat::testing::near_abs;
using edgestat::testing::near_rel;

namespace {

WeightSpec gaussian_weight(int N, double L) {
  WeightSpec w;
  w.N = N;
  w.L = L;
  w.V = [](double x) { return x * x; };
  return w;
}

// Classical Stieltjes procedure on a plain composite Gauss-Legendre rule: monic
// recurrence evaluated on the nodes, inner products summed directly.
std::pair<std::vector<double>, std::vector<double>> stieltjes(const WeightSpec& w, int n) {
  QuadratureRule rule;
  const int panels = 40;
  for (int p = 0; p < panels; ++p) {
    const double a = -w.L + 2 * w.L * p / panels;
    const QuadratureRule r = gauss_legendre(40, a, a + 2 * w.L / panels);
    rule.nodes.insert(rule.nodes.end(), r.nodes.begin(), r.nodes.end());
    rule.weights.insert(rule.weights.end(), r.weights.begin(), r.weights.end());
  }
  const std::size_t m = rule.size();
  std::vector<double> wt(m);
  for (std::size_t i = 0; i < m; ++i) wt[i] = rule.weights[i] * std::exp(w.log_weight(rule.nodes[i]));
  std::vector<double> pm(m, 0.0), p(m, 1.0), alpha(n), beta(n);
  double norm_prev = 0.0;
  for (int k = 0; k < n; ++k) {
    double norm = 0.0, xnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      norm += wt[i] * p[i] * p[i];
      xnorm += wt[i] * rule.nodes[i] * p[i] * p[i];
    }
    alpha[k] = xnorm / norm;
    beta[k] = (k == 0) ? norm : norm / norm_prev;
    for (std::size_t i = 0; i < m; ++i) {
      const double next = (rule.nodes[i] - alpha[k]) * p[i] - (k == 0 ? 0.0 : beta[k]) * pm[i];
      pm[i] = p[i];
      p[i] = next;
    }
    norm_prev = norm;
  }
  return {alpha, beta};
}

}  // namespace

TEST_CASE("recurrence of the scaled Hermite weight") {
  const RecurrenceTable t = recurrence(gaussian_weight(50, 6.0), 50);
  for (int k = 1; k <= 20; ++k) CHECK(near_rel(t.beta[k], k / 100.0, 1e-6));
  for (int k = 0; k < 50; ++k) CHECK(std::abs(t.alpha[k]) <= 1e-10);
  for (int k = 1; k < 50; ++k) CHECK(t.beta[k] > 0.0);
  CHECK(t.log_mass == doctest::Approx(0.5 * std::log(std::numbers::pi / 50)).epsilon(1e-12));
  CHECK(t.refinement_change <= 1e-9);
}

TEST_CASE("Lanczos agrees with the classical Stieltjes procedure") {
  WeightSpec w;
  w.N = 20;
  w.L = 2.5;
  w.V = [](double x) { return 0.5 * x * x + 0.3 * std::pow(x, 4); };
  w.f = [](double x) { return 0.4 * std::sin(2 * x); };
  const RecurrenceTable t = recurrence(w, 20);
  const auto [alpha, beta] = stieltjes(w, 20);
  for (int k = 0; k < 20; ++k) CHECK(near_abs(t.alpha[k], alpha[k], 1e-9));
  for (int k = 1; k < 20; ++k) CHECK(near_rel(t.beta[k], beta[k], 1e-9));
  CHECK(near_rel(t.log_mass, std::log(beta[0]), 1e-12));
}

TEST_CASE("recurrence errors") {
  CHECK_THROWS_AS(recurrence(gaussian_weight(600, 6.0), 600), ValidationError);
  WeightSpec bad = gaussian_weight(10, 3.0);
  bad.V = [](double) { return std::numeric_limits<double>::infinity(); };
  try {
    (void)recurrence(bad, 10);
    FAIL("expected Underflow");
  } catch (const NumericalError& e) {
    CHECK(e.code() == ErrorCode::Underflow);
  }
  RecurrenceOptions coarse;
  coarse.grid_size = 12;
  try {
    (void)recurrence(gaussian_weight(10, 6.0), 10, coarse);
    FAIL("expected GridTooCoarse");
  } catch (const NumericalError& e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
}

TEST_CASE("orthonormality by independent quadrature") {
  WeightSpec w = gaussian_weight(40, 4.0);
  w.f = [](double x) { return 0.3 * std::cos(x); };
  const CDKernel K(w);
  const QuadratureRule rule = gauss_legendre(600, -4.0, 4.0);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(30, 30);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const std::vector<double> q = K.weighted_polynomials(rule.nodes[i]);
    for (int a = 0; a < 30; ++a)
      for (int b = 0; b < 30; ++b) G(a, b) += rule.weights[i] * q[a] * q[b];
  }
  CHECK((G - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("kernel symmetry, trace and positivity") {
  const CDKernel K(gaussian_weight(30, 4.0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const double s = u(rng), t = u(rng);
    CHECK(near_abs(K(s, t), K(t, s), 1e-12 * std::max(1.0, std::abs(K(s, t)))));
  }
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  const double trace = adaptive_gauss_legendre([&](double t) { return K.diagonal(t); }, -4.0, 4.0, opt);
  CHECK(std::abs(trace - 30.0) <= 1e-6 * 30);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 5;
    Eigen::MatrixXd M(k, k);
    std::vector<double> pts(k);
    for (double& p : pts) p = u(rng);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) M(i, j) = K(pts[i], pts[j]);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
    CHECK(ldlt.info() == Eigen::Success);
    CHECK(ldlt.vectorD().minCoeff() >= -1e-12 * M.diagonal().maxCoeff());
  }
}

TEST_CASE("diagonal kernel matches the equilibrium density in the bulk") {
  const CDKernel K(gaussian_weight(100, 4.0));
  CHECK(std::abs(K.diagonal(0.0) / 100.0 / (std::sqrt(2.0) / std::numbers::pi) - 1.0) <= 0.02);
}

TEST_CASE("correlation functions") {
  const CDKernel K(gaussian_weight(12, 4.0));
  const double p[] = {0.3};
  CHECK(correlation(K, p) == doctest::Approx(K.diagonal(0.3) / 12.0).epsilon(1e-14));
  const double same[] = {0.2, 0.2};
  CHECK(std::abs(correlation(K, same)) <= 1e-12 * std::pow(K.diagonal(0.2) / 12, 2));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + trial % 4;
    std::vector<double> pts(k);
    double prod = 1.0;
    for (double& x : pts) {
      x = u(rng);
      const double single[] = {x};
      prod *= correlation(K, single);
    }
    CHECK(correlation(K, pts) <= std::exp(static_cast<double>(k)) * prod);
  }
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  const double mass = adaptive_gauss_legendre([&](double t) { const double a[] = {t}; return correlation(K, a); }, -4.0, 4.0, opt);
  CHECK(std::abs(mass - 1.0) <= 1e-6);
}

TEST_CASE("two-point function at N = 2 equals the normalised two-particle density") {
  const WeightSpec w = gaussian_weight(2, 5.0);
  const CDKernel K(w);
  const QuadratureRule r = gauss_legendre(80, -5.0, 5.0);
  double Z = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double d = r.nodes[i] - r.nodes[j];
      Z += r.weights[i] * r.weights[j] * d * d * std::exp(w.log_weight(r.nodes[i]) + w.log_weight(r.nodes[j]));
    }
  for (auto [x1, x2] : {std::pair{0.1, -0.7}, {1.2, 0.4}, {-0.3, -0.2}}) {
    const double pts[] = {x1, x2};
    const double direct = (x1 - x2) * (x1 - x2) * std::exp(w.log_weight(x1) + w.log_weight(x2)) / Z;
    CHECK(near_abs(correlation(K, pts), direct, 1e-8));
  }
}

TEST_CASE("Christoffel function at N = 3 against the normal equations") {
  WeightSpec w;
  w.N = 3;
  w.L = 5.0;
  w.V = [](double x) { return x * x; };
  const CDKernel K(w);
  // Moments of exp(-3x^2); the mass beyond |x| = 5 is below e^{-75}.
  auto moment = [](int k) { return k % 2 ? 0.0 : std::tgamma(0.5 * k + 0.5) / std::pow(3.0, 0.5 * k + 0.5); };
  Eigen::Matrix3d G;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = moment(i + j);
  for (double t : {-1.0, 0.0, 0.4, 1.7}) {
    const Eigen::Vector3d v(1.0, t, t * t);
    const double minimum = 1.0 / v.dot(G.ldlt().solve(v));
    CHECK(near_rel(christoffel(K, t), minimum, 1e-10));
    CHECK(christoffel(K, t) > 0.0);
  }
}

TEST_CASE("Christoffel function decreases with the degree for a fixed weight") {
  double prev = 1e300;
  for (int N : {3, 5, 8, 12, 20}) {
    WeightSpec w;
    w.N = N;
    w.L = 5.0;
    w.V = [N](double x) { return 2.0 * x * x / N; };  // weight exp(-2 x^2) for every N
    const double lam = christoffel(CDKernel(w), 0.3);
    CHECK(lam < prev);
    prev = lam;
  }
}

TEST_CASE("log partition ratios") {
  const WeightSpec base = gaussian_weight(10, 4.0);
  WeightSpec same = base;
  same.f = [](double) { return 0.0; };
  CHECK(std::abs(log_partition_ratio(same, base).value) <= 1e-12);
  WeightSpec shifted = base;
  shifted.f = [](double) { return 0.37; };
  CHECK(log_partition_ratio(shifted, base).value == doctest::Approx(3.7).epsilon(1e-12));
}

TEST_CASE("log partition ratio against Monte Carlo of the N = 8 ensemble") {
  const int N = 8;
  const WeightSpec base = gaussian_weight(N, 4.0);
  WeightSpec pert = base;
  auto f = [](double x) { return 0.3 * std::sin(1.3 * x) - 0.2 * x * x; };
  pert.f = f;
  const LogRatio r = log_partition_ratio(pert, base);
  CHECK(r.tolerance < 1e-9);

  std::mt19937_64 rng(2024);
  const int M = 40000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < M; ++i) {
    double s = 0.0;
    for (double x : edgestat::testing::gue_eigenvalues(N, rng)) s += f(x);
    const double e = std::exp(s);
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / M;
  const double se = std::sqrt((sum2 / M - mean * mean) / M);
  CHECK(std::abs(std::exp(r.value) - mean) <= 3 * se);
}

TEST_CASE("gap probability basics") {
  const CDKernel K(gaussian_weight(20, 4.0));
  CHECK(gap_probability(K, 4.0, 4.0).probability == 1.0);
  CHECK(gap_probability(K, 5.0, 4.0).probability == 1.0);
  double prev = 0.0;
  for (double t = 0.8; t <= 2.5; t += 0.1) {
    const GapProbability g = gap_probability(K, t, 4.0);
    CHECK(g.probability >= prev);
    CHECK(g.probability <= 1.0);
    CHECK(g.one_minus <= diag_tail_integral(K, t, 4.0) * (1 + 1e-10));
    prev = g.probability;
  }
}

TEST_CASE("gap probability against direct sampling of the N = 8 ensemble") {
  const int N = 8;
  const CDKernel K(gaussian_weight(N, 4.0));
  std::mt19937_64 rng(99);
  const int M = 40000;
  const double ts[] = {1.0, 1.2, 1.4, 1.6, 1.8};
  int counts[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < M; ++i) {
    const std::vector<double> ev = edgestat::testing::gue_eigenvalues(N, rng);
    const double xmax = *std::max_element(ev.begin(), ev.end());
    for (int j = 0; j < 5; ++j) counts[j] += xmax <= ts[j];
  }
  for (int j = 0; j < 5; ++j) {
    const double p = static_cast<double>(counts[j]) / M;
    const double se = std::sqrt(std::max(p * (1 - p), 1.0 / M) / M);
    CHECK(std::abs(gap_probability(K, ts[j], 4.0).probability - p) <= 3 * se);
  }
}

TEST_CASE("diagonal tail integral") {
  const CDKernel K(gaussian_weight(50, 4.0));
  CHECK(diag_tail_integral(K, 4.0, 4.0) == 0.0);
  CHECK(diag_tail_integral(K, 4.0 - 1e-9, 4.0) < 1e-30);
  double prev = 1e300;
  for (double t = 1.3; t < 2.5; t += 0.05) {
    const double v = diag_tail_integral(K, t, 4.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("edge rescaled kernel approaches the Airy kernel") {
  const double kai = airy_kernel(0.0, 0.0);
  auto sol = std::make_shared<const EquilibriumSolution>(SmoothField(ConfiningField({0, 0, 1}), 4.0));
  double prev_err = 1e300;
  for (int N : {50, 100, 200}) {
    const CDKernel K(make_weight(sol, N, 4.0));
    const double err = std::abs(edge_rescaled(K, *sol, 0.0, 0.0) / kai - 1.0);
    CHECK(err <= prev_err);
    prev_err = err;
    if (N == 200) CHECK(err <= 0.05);
    CHECK(near_rel(edge_rescaled(K, *sol, 0.4, -1.1), edge_rescaled(K, *sol, -1.1, 0.4), 1e-12));
  }
}
