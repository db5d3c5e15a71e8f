#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "betafreeze/ensembles.hpp"
#include "betafreeze/orthopoly.hpp"
#include "betafreeze/trieig.hpp"

using namespace betafreeze;

TEST_CASE("laguerre parameter resolution") {
  SUBCASE("fixed gamma (case a)") {
    const EnsembleSpec s = EnsembleSpec::laguerre_from_gamma(4, 4.0, 1.0);
    CHECK(s.a == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(s.gamma == 1.0);
    CHECK(s.p == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("fixed p (case b)") {
    const EnsembleSpec s = EnsembleSpec::laguerre_from_p(4, 10.0, 1.0);
    CHECK(s.a == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(s.gamma == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(s.p == 1.0);
  }
  SUBCASE("direct a") {
    const EnsembleSpec s = EnsembleSpec::laguerre_from_a(4, 4.0, 8.0);
    CHECK(s.gamma == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.a == 8.0);
  }
  SUBCASE("round trips keep the given parameter bit-exact") {
    for (double gamma : {0.5, 1.0, 2.0 / 3.0, 5.0}) {
      const EnsembleSpec s = EnsembleSpec::laguerre_from_gamma(3, 7.3, gamma);
      CHECK(s.gamma == gamma);
      const EnsembleSpec back = EnsembleSpec::laguerre_from_a(3, 7.3, s.a);
      CHECK(back.gamma == doctest::Approx(gamma).epsilon(1e-14));
    }
    for (double p : {0.25, 1.0, 4.0}) {
      const EnsembleSpec s = EnsembleSpec::laguerre_from_p(5, 9.7, p);
      CHECK(s.p == p);
      CHECK(s.gamma == doctest::Approx(2.0 * (p + 1.0) / 9.7).epsilon(1e-15));
    }
  }
  SUBCASE("constraint a > (k-1) beta / 2") {
    CHECK_THROWS_AS((void)EnsembleSpec::laguerre_from_a(4, 4.0, 6.0), std::invalid_argument);
    CHECK_THROWS_AS((void)EnsembleSpec::laguerre_from_gamma(4, 4.0, -0.5), std::invalid_argument);
    // Under the case-b map a = p + (beta/2)(k-1), the a-constraint binds at
    // p = 0, which is stricter than gamma > 0 alone.
    CHECK_THROWS_AS((void)EnsembleSpec::laguerre_from_p(4, 4.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)EnsembleSpec::laguerre_from_p(4, 4.0, 0.0), std::invalid_argument);
    CHECK_NOTHROW((void)EnsembleSpec::laguerre_from_p(4, 4.0, 0.5));
  }
}

TEST_CASE("chi_mean") {
  CHECK(chi_mean(1.0) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
  CHECK(chi_mean(1.0) == doctest::Approx(0.7978846).epsilon(1e-7));
  CHECK(chi_mean(2.0) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-14));
  CHECK(chi_mean(2.0) == doctest::Approx(1.2533141).epsilon(1e-7));

  // Large r: agrees with the sqrt(r) (1 - 1/(4r)) expansion.
  CHECK(chi_mean(1e4) == doctest::Approx(99.99750).epsilon(1e-7));
  CHECK(chi_mean(1e4) == doctest::Approx(100.0 * (1.0 - 1.0 / 4e4)).epsilon(1e-9));
  for (double r : {100.0, 1e3, 1e6}) {
    CHECK(std::abs(chi_mean(r) - std::sqrt(r)) <= 1.0 / (2.0 * std::sqrt(r)));
  }
  CHECK_THROWS_AS((void)chi_mean(0.0), std::invalid_argument);
}

TEST_CASE("sample_chi statistics") {
  RngStream rng(314);
  SUBCASE("nonnegative always") {
    for (int i = 0; i < 1000; ++i) CHECK(sample_chi(0.7, rng) >= 0.0);
  }
  SUBCASE("mean at r = 1e4 within 3 sigma") {
    const double r = 1e4;
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_chi(r, rng);
    const double mean = sum / n;
    const double sd = std::sqrt(r - chi_mean(r) * chi_mean(r));
    CHECK(std::abs(mean - chi_mean(r)) < 3.0 * sd / std::sqrt(static_cast<double>(n)));
  }
  SUBCASE("mean of squares at r = 2") {
    const int n = 100000;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double c = sample_chi(2.0, rng);
      sum_sq += c * c;
    }
    // chi^2_2 has mean 2 and variance 4.
    CHECK(std::abs(sum_sq / n - 2.0) < 3.0 * 2.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("sample_hermite") {
  SUBCASE("k=1, beta=2: variance of the scaled scalar is 1/4") {
    const EnsembleSpec spec = EnsembleSpec::hermite(1, 2.0);
    RngStream rng(5);
    const int n = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = sample_hermite(spec, rng).diag[0];
      sum += v;
      sum_sq += v * v;
    }
    const double var = sum_sq / n - (sum / n) * (sum / n);
    CHECK(std::abs(var - 0.25) < 3.0 * 0.25 * std::sqrt(2.0 / n));
  }
  SUBCASE("trace: mean 0 and variance 1/(2 beta) at k=4, beta=4") {
    const EnsembleSpec spec = EnsembleSpec::hermite(4, 4.0);
    RngStream rng(6);
    const int n = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const TridiagonalSym t = sample_hermite(spec, rng);
      double tr = 0.0;
      for (double d : t.diag) tr += d;
      sum += tr;
      sum_sq += tr * tr;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double target = 1.0 / (2.0 * 4.0);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(target / n));
    CHECK(std::abs(var - target) <= 0.05 * target);
  }
  SUBCASE("unscaled diagonal entries have unit variance") {
    const EnsembleSpec spec = EnsembleSpec::hermite(3, 7.0);
    RngStream rng(8);
    const int n = 100000;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const TridiagonalSym t = sample_hermite_raw(spec, rng);
      sum_sq += t.diag[0] * t.diag[0];
    }
    CHECK(std::abs(sum_sq / n - 1.0) < 3.0 * std::sqrt(2.0 / n));
  }
  SUBCASE("determinism per (spec, seed)") {
    const EnsembleSpec spec = EnsembleSpec::hermite(5, 2.5);
    RngStream a(123);
    RngStream b(123);
    const TridiagonalSym ta = sample_hermite(spec, a);
    const TridiagonalSym tb = sample_hermite(spec, b);
    CHECK(ta.diag == tb.diag);
    CHECK(ta.offdiag == tb.offdiag);
  }
}

TEST_CASE("sample_laguerre") {
  SUBCASE("k=1: mean of the scaled scalar is 2a/beta") {
    const EnsembleSpec spec = EnsembleSpec::laguerre_from_a(1, 10.0, 10.0);
    RngStream rng(9);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_laguerre(spec, rng).diag[0];
    // chi^2_{2a} / beta has mean 2a/beta = 2 and variance 4a/beta^2 = 0.4.
    CHECK(std::abs(sum / n - 2.0) < 3.0 * std::sqrt(0.4 / n));
  }
  SUBCASE("eigenvalues are nonnegative and descending") {
    const EnsembleSpec spec = EnsembleSpec::laguerre_from_gamma(4, 1.0, 0.2);
    RngStream rng(10);
    for (int i = 0; i < 500; ++i) {
      const std::vector<double> spectrum = sample_spectrum(spec, rng);
      for (double v : spectrum) CHECK(v >= 0.0);
      for (std::size_t j = 0; j + 1 < spectrum.size(); ++j) CHECK(spectrum[j] >= spectrum[j + 1]);
    }
  }
  SUBCASE("Var(k beta trace) = 4 a k at k=2, gamma=1, beta=8") {
    const EnsembleSpec spec = EnsembleSpec::laguerre_from_gamma(2, 8.0, 1.0);
    REQUIRE(spec.a == doctest::Approx(8.0));
    RngStream rng(11);
    const int n = 100000;
    const double kb = 2.0 * 8.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const TridiagonalSym t = sample_laguerre(spec, rng);
      const double v = kb * (t.diag[0] + t.diag[1]);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double target = 4.0 * spec.a * 2.0;
    CHECK(std::abs(var - target) <= 0.05 * target);
  }
}

TEST_CASE("residual matrices against the freeze limits") {
  SUBCASE("hermite: diag var 1, offdiag var 1/4 at beta = 1e6") {
    const EnsembleSpec spec = EnsembleSpec::hermite(4, 1e6);
    RngStream rng(21);
    const int n = 10000;
    std::vector<double> diag_sq(4, 0.0), diag_sum(4, 0.0);
    std::vector<double> off_sq(3, 0.0), off_sum(3, 0.0);
    for (int s = 0; s < n; ++s) {
      const TridiagonalSym z = hermite_residual_matrix(sample_hermite_raw(spec, rng), spec);
      for (int i = 0; i < 4; ++i) {
        diag_sum[i] += z.diag[i];
        diag_sq[i] += z.diag[i] * z.diag[i];
      }
      for (int i = 0; i < 3; ++i) {
        off_sum[i] += z.offdiag[i];
        off_sq[i] += z.offdiag[i] * z.offdiag[i];
      }
    }
    for (int i = 0; i < 4; ++i) {
      const double var = diag_sq[i] / n - (diag_sum[i] / n) * (diag_sum[i] / n);
      CHECK(var > 0.97);
      CHECK(var < 1.03);
    }
    for (int i = 0; i < 3; ++i) {
      const double var = off_sq[i] / n - (off_sum[i] / n) * (off_sum[i] / n);
      CHECK(std::abs(var - 0.25) <= 0.05 * 0.25);
    }
  }
  SUBCASE("laguerre: bidiagonal var 1/2 at beta = 1e6") {
    const EnsembleSpec spec = EnsembleSpec::laguerre_from_gamma(3, 1e6, 1.0);
    RngStream rng(22);
    const int n = 10000;
    std::vector<double> sq(5, 0.0), sums(5, 0.0);
    for (int s = 0; s < n; ++s) {
      const Bidiagonal z = laguerre_residual_matrix(sample_laguerre_raw(spec, rng), spec);
      const double entries[5] = {z.diag[0], z.diag[1], z.diag[2], z.subdiag[0], z.subdiag[1]};
      for (int i = 0; i < 5; ++i) {
        sums[i] += entries[i];
        sq[i] += entries[i] * entries[i];
      }
    }
    for (int i = 0; i < 5; ++i) {
      const double var = sq[i] / n - (sums[i] / n) * (sums[i] / n);
      CHECK(std::abs(var - 0.5) <= 0.05 * 0.5);
    }
  }
  SUBCASE("dimension mismatch rejected") {
    const EnsembleSpec spec = EnsembleSpec::hermite(4, 1e6);
    const TridiagonalSym wrong{{0.0, 0.0}, {0.0}};
    CHECK_THROWS_AS((void)hermite_residual_matrix(wrong, spec), std::invalid_argument);
  }
}

TEST_CASE("frozen limit proxy at beta = 1e8") {
  const EnsembleSpec spec = EnsembleSpec::hermite(4, 1e8);
  const FrozenSpectrum fs = hermite_roots(4);
  RngStream rng(23);
  const double scale = 1.0 / std::sqrt(8.0);
  for (int rep = 0; rep < 10; ++rep) {
    const std::vector<double> spectrum = sample_spectrum(spec, rng);
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(spectrum[i] - fs.roots[i] * scale) <= 1e-3);
  }
}
