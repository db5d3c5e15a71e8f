#include "betafreeze/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace betafreeze {

namespace {

double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double normal_cdf(double x, double mu, double sigma) {
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::numbers::sqrt2));
}

}  // namespace

GaussianMixture gaussian_mixture(const FluctuationModel& model, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("gaussian_mixture: beta must be > 0");
  const std::size_t k = model.k;
  GaussianMixture m;
  m.components.resize(k);
  const double sqrt_beta = std::sqrt(beta);
  for (std::size_t i = 0; i < k; ++i) {
    m.components[i].weight = 1.0 / static_cast<double>(k);
    m.components[i].mu = model.means[i];
    m.components[i].sigma = model.scale * std::sqrt(model.covariance(i, i)) / sqrt_beta;
  }
  return m;
}

double mixture_pdf(const GaussianMixture& m, double x) {
  double s = 0.0;
  for (const MixtureComponent& c : m.components) s += c.weight * normal_pdf(x, c.mu, c.sigma);
  return s;
}

double mixture_cdf(const GaussianMixture& m, double x) {
  double s = 0.0;
  for (const MixtureComponent& c : m.components) s += c.weight * normal_cdf(x, c.mu, c.sigma);
  return s;
}

double exact_level_density_beta2(std::size_t k, double x_scaled) {
  if (k == 0) throw std::invalid_argument("exact_level_density_beta2: k must be >= 1");
  const double kd = static_cast<double>(k);
  const double s = 2.0 * std::sqrt(kd);
  const double y = s * x_scaled;

  // Orthonormal Hermite functions for the weight exp(-y^2/2): run the
  // recurrence on the weighted values directly, tracking an explicit log
  // scale so deep-tail arguments neither underflow nor overflow.
  //   phi_0 = exp(-y^2/4) / (2 pi)^{1/4},
  //   phi_{j+1} = (y phi_j - sqrt(j) phi_{j-1}) / sqrt(j+1).
  double log_scale = -0.25 * y * y - 0.25 * std::log(2.0 * std::numbers::pi);
  std::vector<double> v(k);
  v[0] = 1.0;
  if (k > 1) v[1] = y;
  constexpr double kCap = 1e140;
  for (std::size_t j = 1; j + 1 < k; ++j) {
    const double jd = static_cast<double>(j);
    v[j + 1] = (y * v[j] - std::sqrt(jd) * v[j - 1]) / std::sqrt(jd + 1.0);
    if (std::abs(v[j + 1]) > kCap) {
      for (std::size_t i = 0; i <= j + 1; ++i) v[i] /= kCap;
      log_scale += std::log(kCap);
    }
  }
  // Factor out the largest magnitude so the squared sum cannot overflow.
  double vmax = 0.0;
  for (double val : v) vmax = std::max(vmax, std::abs(val));
  if (vmax == 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double val : v) sum_sq += (val / vmax) * (val / vmax);
  const double log_density =
      std::log(s / kd) + std::log(sum_sq) + 2.0 * (log_scale + std::log(vmax));
  return log_density < -745.0 ? 0.0 : std::exp(log_density);
}

double semicircle_pdf(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return (2.0 / std::numbers::pi) * std::sqrt(1.0 - x * x);
}

Histogram build_histogram(std::span<const double> samples, std::size_t nbins,
                          double lo, double hi) {
  if (nbins == 0) throw std::invalid_argument("build_histogram: nbins must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("build_histogram: requires lo < hi");

  Histogram h;
  h.edges.resize(nbins + 1);
  for (std::size_t b = 0; b <= nbins; ++b)
    h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(nbins);
  h.edges[nbins] = hi;

  std::vector<std::size_t> counts(nbins, 0);
  h.n_total = samples.size();
  for (double x : samples) {
    if (x < h.edges.front()) {
      ++h.n_below;
      continue;
    }
    if (x > h.edges.back()) {
      ++h.n_above;
      continue;
    }
    // Left-closed right-open against the published edges; x == hi lands in
    // the final (closed) bin.
    const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
    std::size_t b = static_cast<std::size_t>(it - h.edges.begin());
    b = b == 0 ? 0 : b - 1;
    if (b >= nbins) b = nbins - 1;
    ++counts[b];
  }

  const std::size_t n_in = h.n_total - h.n_below - h.n_above;
  if (n_in == 0) throw std::invalid_argument("build_histogram: no samples in range");

  h.density.resize(nbins);
  for (std::size_t b = 0; b < nbins; ++b) {
    const double width = h.edges[b + 1] - h.edges[b];
    h.density[b] = static_cast<double>(counts[b]) / (static_cast<double>(n_in) * width);
  }
  return h;
}

void default_density_range(const EnsembleSpec& spec, double& lo, double& hi) {
  if (spec.kind == EnsembleKind::hermite) {
    lo = -1.25;
    hi = 1.25;
    return;
  }
  const FluctuationModel model = laguerre_fluctuation_model(spec.k, spec.gamma);
  lo = -0.1;
  hi = 1.5 * model.means.front();
}

}  // namespace betafreeze
