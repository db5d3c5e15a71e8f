#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "betafreeze/fluctuations.hpp"

namespace betafreeze {

struct MixtureComponent {
  double weight = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
};

// Equal-weight sum of k Gaussians approximating the level density.
struct GaussianMixture {
  std::vector<MixtureComponent> components;
};

// Level-density approximation at inverse temperature beta: component i is
// N(mu_i, sigma_i^2) with mu_i = means_i and sigma_i = scale sqrt(Var G_i) / sqrt(beta),
// weight 1/k. Exact for k = 1 at every beta.
GaussianMixture gaussian_mixture(const FluctuationModel& model, double beta);

double mixture_pdf(const GaussianMixture& m, double x);
double mixture_cdf(const GaussianMixture& m, double x);

// Exact level density of the k x k beta = 2 Hermite ensemble in the scaled
// variable (scaling factor s = 2 sqrt(k)):
//   rho(x) = (s / k) sum_{j<k} phi_j(s x)^2
// with phi_j the orthonormal Hermite functions for the weight exp(-y^2 / 2).
double exact_level_density_beta2(std::size_t k, double x_scaled);

// (2/pi) sqrt(1 - x^2) on [-1, 1], the k -> infinity level density in the
// same scaled variable.
double semicircle_pdf(double x);

// Density-normalized histogram. Bins are left-closed right-open with the last
// bin closed; out-of-range samples are counted, not binned, and the density
// integrates to one over [edges.front(), edges.back()].
struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;
  std::size_t n_total = 0;
  std::size_t n_below = 0;
  std::size_t n_above = 0;

  std::size_t bins() const { return density.size(); }
  std::size_t n_in_range() const { return n_total - n_below - n_above; }
};

Histogram build_histogram(std::span<const double> samples, std::size_t nbins,
                          double lo, double hi);

// Default plotting ranges used by the CLI: [-1.25, 1.25] for Hermite and
// [-0.1, 1.5 * largest frozen mean] for Laguerre.
void default_density_range(const EnsembleSpec& spec, double& lo, double& hi);

}  // namespace betafreeze
