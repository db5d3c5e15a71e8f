#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "betafreeze/density.hpp"
#include "betafreeze/rng.hpp"
#include "oracles.hpp"

using namespace betafreeze;

TEST_CASE("gaussian_mixture sigmas") {
  SUBCASE("hermite k=1, beta=2 is N(0, 1/4)") {
    const GaussianMixture m = gaussian_mixture(hermite_fluctuation_model(1), 2.0);
    REQUIRE(m.components.size() == 1);
    CHECK(m.components[0].weight == 1.0);
    CHECK(m.components[0].mu == 0.0);
    CHECK(m.components[0].sigma == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("hermite k=2, beta=10") {
    const GaussianMixture m = gaussian_mixture(hermite_fluctuation_model(2), 10.0);
    for (const MixtureComponent& c : m.components) {
      CHECK(c.weight == 0.5);
      CHECK(c.sigma == doctest::Approx(std::sqrt(0.75 / 40.0)).epsilon(1e-12));
      CHECK(c.sigma == doctest::Approx(0.136931).epsilon(1e-5));
    }
  }
  SUBCASE("weights always sum to one") {
    for (std::size_t k : {1u, 3u, 7u}) {
      const GaussianMixture m = gaussian_mixture(hermite_fluctuation_model(k), 4.0);
      double w = 0.0;
      for (const MixtureComponent& c : m.components) w += c.weight;
      CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("mixture pdf and cdf") {
  GaussianMixture single;
  single.components.push_back({1.0, 0.0, 1.0});
  CHECK(mixture_pdf(single, 0.0) == doctest::Approx(0.3989423).epsilon(1e-7));
  CHECK(mixture_cdf(single, -40.0) == doctest::Approx(0.0).epsilon(1e-300));
  CHECK(mixture_cdf(single, 40.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mixture_cdf(single, 0.0) == doctest::Approx(0.5).epsilon(1e-14));

  SUBCASE("cdf is nondecreasing") {
    const GaussianMixture m = gaussian_mixture(hermite_fluctuation_model(3), 6.0);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.5 + 3.0 * i / 100.0;
      const double c = mixture_cdf(m, x);
      CHECK(c >= prev);
      prev = c;
    }
  }
  SUBCASE("hermite mixtures are even functions") {
    const GaussianMixture m = gaussian_mixture(hermite_fluctuation_model(4), 6.0);
    for (double x : {0.1, 0.37, 0.9, 1.2})
      CHECK(std::abs(mixture_pdf(m, x) - mixture_pdf(m, -x)) < 1e-12);
  }
  SUBCASE("mixtures integrate to one") {
    for (std::size_t k : {1u, 2u, 4u}) {
      const GaussianMixture m = gaussian_mixture(hermite_fluctuation_model(k), 4.0);
      const double mass = oracles::integrate([&m](double x) { return mixture_pdf(m, x); },
                                             -3.0, 3.0, 96, 24);
      CHECK(std::abs(mass - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("exact_level_density_beta2") {
  SUBCASE("k=1 is a scaled standard Gaussian") {
    CHECK(exact_level_density_beta2(1, 0.0) == doctest::Approx(2.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-13));
    CHECK(exact_level_density_beta2(1, 0.0) == doctest::Approx(0.7978846).epsilon(1e-7));
    // Density of N(0, 1) / 2.
    for (double x : {0.2, 0.5, 1.0}) {
      const double expected = 2.0 * std::exp(-0.5 * (2.0 * x) * (2.0 * x)) / std::sqrt(2.0 * std::numbers::pi);
      CHECK(exact_level_density_beta2(1, x) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("k=2 at the origin") {
    CHECK(exact_level_density_beta2(2, 0.0) == doctest::Approx(std::sqrt(2.0) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-13));
    CHECK(exact_level_density_beta2(2, 0.0) == doctest::Approx(0.5641896).epsilon(1e-7));
  }
  SUBCASE("normalization and symmetry") {
    for (std::size_t k : {1u, 2u, 4u, 7u}) {
      // Range wide enough that the Gaussian-weight tail is below 1e-10 even
      // for k = 1 (scaled variable, s = 2 sqrt(k)).
      const double mass = oracles::integrate(
          [k](double x) { return exact_level_density_beta2(k, x); }, -4.0, 4.0, 256, 24);
      CHECK(std::abs(mass - 1.0) < 1e-8);
      for (double x : {0.1, 0.6, 1.1})
        CHECK(std::abs(exact_level_density_beta2(k, x) - exact_level_density_beta2(k, -x)) < 1e-12);
    }
  }
  SUBCASE("k=1 mixture equals the exact density pointwise at beta=2") {
    const GaussianMixture m = gaussian_mixture(hermite_fluctuation_model(1), 2.0);
    for (double x = -1.25; x <= 1.25; x += 0.05)
      CHECK(std::abs(mixture_pdf(m, x) - exact_level_density_beta2(1, x)) < 1e-12);
  }
  SUBCASE("deep tail underflows to zero, not NaN") {
    const double v = exact_level_density_beta2(900, 1.25);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
}

TEST_CASE("semicircle_pdf") {
  CHECK(semicircle_pdf(0.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(semicircle_pdf(0.0) == doctest::Approx(0.6366198).epsilon(1e-7));
  CHECK(semicircle_pdf(1.0) == 0.0);
  CHECK(semicircle_pdf(-1.0) == 0.0);
  CHECK(semicircle_pdf(2.0) == 0.0);
  // Substitution x = sin t makes the integrand smooth.
  const double mass = oracles::integrate(
      [](double t) { return semicircle_pdf(std::sin(t)) * std::cos(t); },
      -std::numbers::pi / 2.0, std::numbers::pi / 2.0, 64, 24);
  CHECK(std::abs(mass - 1.0) < 1e-10);
}

TEST_CASE("build_histogram") {
  SUBCASE("single sample, one bin") {
    const std::vector<double> s{0.3};
    const Histogram h = build_histogram(s, 1, 0.0, 2.0);
    CHECK(h.density == std::vector<double>{0.5});
    CHECK(h.n_in_range() == 1);
  }
  SUBCASE("tie rule: samples on an interior edge land in the right bin") {
    const std::vector<double> s{1.0, 1.0, 1.0};
    const Histogram h = build_histogram(s, 2, 0.0, 2.0);
    CHECK(h.density[0] == 0.0);
    CHECK(h.density[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("hi edge belongs to the closed last bin") {
    const std::vector<double> s{2.0};
    const Histogram h = build_histogram(s, 4, 0.0, 2.0);
    CHECK(h.density[3] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("out-of-range samples are counted, not binned") {
    const std::vector<double> s{-5.0, 0.5, 1.5, 99.0};
    const Histogram h = build_histogram(s, 2, 0.0, 2.0);
    CHECK(h.n_below == 1);
    CHECK(h.n_above == 1);
    CHECK(h.n_in_range() == 2);
    double mass = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b)
      mass += h.density[b] * (h.edges[b + 1] - h.edges[b]);
    CHECK(std::abs(mass - 1.0) < 1e-12);
  }
  SUBCASE("density mass is one for any sample set") {
    RngStream rng(33);
    std::vector<double> s(5000);
    for (double& v : s) v = rng.normal();
    const Histogram h = build_histogram(s, 37, -2.5, 2.5);
    double mass = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b)
      mass += h.density[b] * (h.edges[b + 1] - h.edges[b]);
    CHECK(std::abs(mass - 1.0) < 1e-12);
  }
  SUBCASE("1e6 standard normal draws vs the density, 50 bins on [-4, 4]") {
    RngStream rng(34);
    std::vector<double> s(1000000);
    for (double& v : s) v = rng.normal();
    const Histogram h = build_histogram(s, 50, -4.0, 4.0);
    double sup = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) {
      const double lo = h.edges[b];
      const double hi = h.edges[b + 1];
      const double mid = 0.5 * (lo + hi);
      const auto pdf = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
      };
      const double fbar = (pdf(lo) + 4.0 * pdf(mid) + pdf(hi)) / 6.0;
      sup = std::max(sup, std::abs(h.density[b] - fbar));
    }
    CHECK(sup <= 0.01);
  }
  SUBCASE("errors") {
    const std::vector<double> inside{0.5};
    CHECK_THROWS_AS((void)build_histogram(inside, 0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)build_histogram(inside, 4, 1.0, 0.0), std::invalid_argument);
    const std::vector<double> outside{9.0};
    CHECK_THROWS_AS((void)build_histogram(outside, 4, 0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("laguerre mixture mass below zero stays small for gamma >= 1, beta >= 4") {
  for (double gamma : {1.0, 5.0}) {
    for (double beta : {4.0, 10.0}) {
      const GaussianMixture m = gaussian_mixture(laguerre_fluctuation_model(4, gamma), beta);
      CHECK(mixture_cdf(m, 0.0) < 0.05);
    }
  }
}

TEST_CASE("default density ranges") {
  double lo = 0.0;
  double hi = 0.0;
  default_density_range(EnsembleSpec::hermite(4, 2.0), lo, hi);
  CHECK(lo == -1.25);
  CHECK(hi == 1.25);

  default_density_range(EnsembleSpec::laguerre_from_gamma(4, 10.0, 1.0), lo, hi);
  CHECK(lo == -0.1);
  const FluctuationModel m = laguerre_fluctuation_model(4, 1.0);
  CHECK(hi == doctest::Approx(1.5 * m.means[0]).epsilon(1e-14));
}
