#include "betafreeze/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "betafreeze/format.hpp"
#include "betafreeze/orthopoly.hpp"
#include "betafreeze/parallel.hpp"
#include "betafreeze/trieig.hpp"

namespace betafreeze {

namespace {

constexpr std::size_t kMcChunk = 256;

double rel_err(double observed, double expected) {
  return std::abs(observed - expected) / std::abs(expected);
}

Matrix random_symmetric(std::size_t k, RngStream& rng) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double v = 2.0 * rng.uniform01() - 1.0;
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

double cov_trace_target(const FluctuationModel& model) {
  const double kd = static_cast<double>(model.k);
  return model.kind == EnsembleKind::hermite ? kd : 2.0 * kd * (kd + model.gamma - 1.0);
}

double cov_sum(const Matrix& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) s += c(i, j);
  return s;
}

}  // namespace

const VerifyThresholds& default_thresholds() {
  static const VerifyThresholds t{};
  return t;
}

bool VerificationReport::overall() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

CheckResult& VerificationReport::add_band(std::string name, double observed, double expected,
                                          double tolerance, std::uint64_t n, std::uint64_t seed) {
  CheckResult c;
  c.name = std::move(name);
  c.observed = observed;
  c.expected = expected;
  c.tolerance = tolerance;
  c.passed = std::abs(observed - expected) <= tolerance;
  c.n = n;
  c.seed = seed;
  checks.push_back(std::move(c));
  return checks.back();
}

CheckResult& VerificationReport::add_flag(std::string name, double observed, double expected,
                                          double tolerance, bool passed, std::uint64_t n,
                                          std::uint64_t seed) {
  CheckResult c;
  c.name = std::move(name);
  c.observed = observed;
  c.expected = expected;
  c.tolerance = tolerance;
  c.passed = passed;
  c.n = n;
  c.seed = seed;
  checks.push_back(std::move(c));
  return checks.back();
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string VerificationReport::to_json() const {
  // Unbounded tolerances (informational checks) serialize as null.
  const auto number = [](double v) {
    return std::isfinite(v) ? to_string_17g(v) : std::string("null");
  };
  std::ostringstream os;
  os << "{\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const CheckResult& c = checks[i];
    if (i) os << ",";
    os << "{\"name\":\"" << c.name << "\",\"observed\":" << number(c.observed)
       << ",\"expected\":" << number(c.expected)
       << ",\"tolerance\":" << number(c.tolerance)
       << ",\"passed\":" << (c.passed ? "true" : "false") << ",\"n\":" << c.n
       << ",\"seed\":" << c.seed << "}";
  }
  os << "],\"overall\":" << (overall() ? "true" : "false") << "}";
  return os.str();
}

double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty input");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(hi - f, f - lo));
  }
  return d;
}

VerificationReport chi_normal_limit_check(double r, std::size_t n, std::uint64_t seed) {
  if (!(r > 0.0)) throw std::invalid_argument("chi_normal_limit_check: r must be > 0");
  if (n < 2) throw std::invalid_argument("chi_normal_limit_check: n too small");
  const VerifyThresholds& thr = default_thresholds();

  const double root_r = std::sqrt(r);
  std::vector<double> draws(n);
  parallel_chunks(n, 1024, [&](std::size_t b, std::size_t e, std::size_t chunk) {
    RngStream rng = RngStream::substream(seed, chunk);
    for (std::size_t i = b; i < e; ++i) draws[i] = rng.chi(r) - root_r;
  });

  // N(0, 1/2) CDF reduces to erfc(-x)/2.
  const double d = ks_statistic(draws, [](double x) { return 0.5 * std::erfc(-x); });

  double mean = 0.0;
  for (double x : draws) mean += x;
  mean /= static_cast<double>(n);

  const double expected_mean = chi_mean(r) - root_r;
  const double chi_var = r - chi_mean(r) * chi_mean(r);
  const double mean_tol = thr.mean_sigmas * std::sqrt(chi_var / static_cast<double>(n));

  VerificationReport report;
  const std::string tag = "[r=" + to_string_17g(r) + "]";
  report.add_band("chi_ks" + tag, d, 0.0, thr.chi_ks, n, seed);
  report.add_band("chi_mean" + tag, mean, expected_mean, mean_tol, n, seed);
  return report;
}

VerificationReport fluctuation_mc_check(const EnsembleSpec& spec, std::size_t n,
                                        std::uint64_t seed,
                                        const FluctuationCheckOptions& opts) {
  spec.validate();
  if (n < 2) throw std::invalid_argument("fluctuation_mc_check: n too small");
  const VerifyThresholds& thr = default_thresholds();
  const std::size_t k = spec.k;

  const FluctuationModel model = spec.kind == EnsembleKind::hermite
                                     ? hermite_fluctuation_model(k)
                                     : laguerre_fluctuation_model(k, spec.gamma);

  const double sqrt_beta = std::sqrt(spec.beta);
  std::vector<double> x(n * k);
  parallel_chunks(n, kMcChunk, [&](std::size_t b, std::size_t e, std::size_t chunk) {
    RngStream rng = RngStream::substream(seed, chunk);
    for (std::size_t s = b; s < e; ++s) {
      const std::vector<double> spectrum = sample_spectrum(spec, rng);
      for (std::size_t i = 0; i < k; ++i)
        x[s * k + i] = sqrt_beta * (spectrum[i] - model.means[i]) / model.scale;
    }
  });

  const double nd = static_cast<double>(n);
  std::vector<double> mean(k, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < k; ++i) mean[i] += x[s * k + i];
  for (double& m : mean) m /= nd;

  Matrix cov(k, k, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      const double di = x[s * k + i] - mean[i];
      for (std::size_t j = i; j < k; ++j) cov(i, j) += di * (x[s * k + j] - mean[j]);
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      cov(i, j) /= nd - 1.0;
      cov(j, i) = cov(i, j);
    }

  VerificationReport report;
  for (std::size_t i = 0; i < k; ++i) {
    const double band = thr.mean_sigmas * std::sqrt(model.covariance(i, i) / nd);
    report.add_band("mean[" + std::to_string(i + 1) + "]", mean[i], 0.0, band, n, seed);
  }

  bool cov_failure = false;
  double cov_max_err = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double expected = model.covariance(i, j);
      const double coef = opts.floor_coef >= 0.0 ? opts.floor_coef : thr.cov_floor_coef;
      const double floor =
          opts.mc_sigma_floor
              ? 3.0 * std::sqrt((model.covariance(i, i) * model.covariance(j, j) +
                                 expected * expected) /
                                nd)
              : coef / std::sqrt(nd);
      const double tol = std::max(opts.rel_tol * std::abs(expected), floor);
      const CheckResult& c =
          report.add_band("cov[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]",
                          cov(i, j), expected, tol, n, seed);
      cov_failure = cov_failure || !c.passed;
      cov_max_err = std::max(cov_max_err, std::abs(cov(i, j) - expected));
    }
  }
  report.add_flag("cov_max_abs_err", cov_max_err, 0.0,
                  std::numeric_limits<double>::infinity(), true, n, seed);

  // Worst deviation across the whole first-order law (means and covariance).
  // The mean component carries the leading O(1/sqrt(beta)) finite-beta bias,
  // so this aggregate resolves the approach to the limit law in beta.
  double law_max_err = cov_max_err;
  for (double m : mean) law_max_err = std::max(law_max_err, std::abs(m));
  report.add_flag("max_abs_err", law_max_err, 0.0,
                  std::numeric_limits<double>::infinity(), true, n, seed);

  if (cov_failure) {
    // Localize the fault: if the model's own trace identity is broken, the
    // printed covariance formula is implicated, not the sampler.
    const double target = cov_trace_target(model);
    const double trace_rel = rel_err(cov_sum(model.covariance), target);
    report.add_flag("formula-discrepancy", trace_rel, 0.0, thr.cov_trace_rel,
                    trace_rel <= thr.cov_trace_rel, n, seed);
  }
  return report;
}

VerificationReport perturbation_order_check(std::size_t k,
                                            std::span<const double> eps_list,
                                            std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("perturbation_order_check: k must be >= 2");
  if (eps_list.size() < 2)
    throw std::invalid_argument("perturbation_order_check: need at least two eps values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0))
      throw std::invalid_argument("perturbation_order_check: eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("perturbation_order_check: eps values must decrease");
  }
  const VerifyThresholds& thr = default_thresholds();

  RngStream rng = RngStream::substream(seed, 0);

  // Resample A until the spectrum is comfortably separated, so the quadratic
  // remainder dominates at the tested eps scale.
  Matrix a;
  bool found = false;
  for (int attempt = 0; attempt < 100 && !found; ++attempt) {
    a = random_symmetric(k, rng);
    const EigenResult ea = eigh_symmetric(a, false);
    const double spread = ea.values.front() - ea.values.back();
    if (spread <= 0.0) continue;
    double min_gap = spread;
    for (std::size_t i = 0; i + 1 < k; ++i)
      min_gap = std::min(min_gap, ea.values[i] - ea.values[i + 1]);
    found = min_gap > 0.2 * spread / static_cast<double>(k - 1);
  }
  if (!found)
    throw std::runtime_error("perturbation_order_check: no distinct spectrum in 100 resamples");
  const Matrix b = random_symmetric(k, rng);

  VerificationReport report;
  std::vector<double> errors(eps_list.size());
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    const double eps = eps_list[e];
    const std::vector<double> predicted = first_order_eig(a, b, eps);
    Matrix m = a;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) += eps * b(i, j);
    const EigenResult em = eigh_symmetric(m, false);
    double err = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      err = std::max(err, std::abs(em.values[i] - predicted[i]));
    errors[e] = err;
    report.add_flag("pred_error[eps=" + to_string_17g(eps) + "]", err, 0.0,
                    std::numeric_limits<double>::infinity(), true, 1, seed);
  }

  for (std::size_t e = 0; e + 1 < eps_list.size(); ++e) {
    const double step = eps_list[e] / eps_list[e + 1];
    const double expected = step * step;
    const double ratio = errors[e] / errors[e + 1];
    // [3.5, 4.5] for halved eps, scaled for other step factors.
    const double lo = thr.order_ratio_lo / 4.0 * expected;
    const double hi = thr.order_ratio_hi / 4.0 * expected;
    report.add_flag("order_ratio[" + to_string_17g(eps_list[e]) + "/" +
                        to_string_17g(eps_list[e + 1]) + "]",
                    ratio, expected, (hi - lo) / 2.0, ratio >= lo && ratio <= hi, 1, seed);
  }
  return report;
}

VerificationReport invariant_suite(std::size_t k_max, std::span<const double> gammas) {
  if (k_max == 0) throw std::invalid_argument("invariant_suite: k_max must be >= 1");
  const VerifyThresholds& thr = default_thresholds();
  VerificationReport report;

  double herm_root_sum = 0.0;
  double herm_root_sq = 0.0;
  double herm_symmetry = 0.0;
  double herm_residual = 0.0;
  double lag_root_sum = 0.0;
  double lag_residual = 0.0;
  double herm_trace = 0.0;
  double lag_trace = 0.0;
  double cov_asym = 0.0;
  double psd_worst = 0.0;
  double var_sym = 0.0;

  for (std::size_t k = 1; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);

    const TridiagonalSym hf = hermite_freeze_matrix(k);
    const FrozenSpectrum hs = hermite_roots(k);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double r : hs.roots) {
      sum += r;
      sum_sq += r * r;
    }
    herm_root_sum = std::max(herm_root_sum, std::abs(sum));
    herm_root_sq = std::max(herm_root_sq, std::abs(sum_sq - kd * (kd - 1.0) / 2.0));
    for (std::size_t i = 0; i < k; ++i)
      herm_symmetry = std::max(herm_symmetry, std::abs(hs.roots[i] + hs.roots[k - 1 - i]));

    const double hnorm = std::max(hf.norm_inf(), 1e-300);
    for (std::size_t i = 0; i < k; ++i) {
      const std::vector<double> v = hs.eigvectors.col(i);
      herm_residual = std::max(herm_residual, eig_residual(hf, hs.roots[i], v) / hnorm);
    }

    const FluctuationModel hm = hermite_fluctuation_model(k);
    herm_trace = std::max(herm_trace, rel_err(cov_sum(hm.covariance), kd));
    for (std::size_t i = 0; i < k; ++i) {
      var_sym = std::max(var_sym, std::abs(hm.covariance(i, i) - hm.covariance(k - 1 - i, k - 1 - i)));
      for (std::size_t j = 0; j < k; ++j)
        cov_asym = std::max(cov_asym, std::abs(hm.covariance(i, j) - hm.covariance(j, i)));
    }
    {
      const EigenResult ec = eigh_symmetric(hm.covariance, false);
      double trace = 0.0;
      for (std::size_t i = 0; i < k; ++i) trace += hm.covariance(i, i);
      psd_worst = std::min(psd_worst, ec.values.back() / trace);
    }

    for (double gamma : gammas) {
      const LaguerreFreeze lf = laguerre_freeze_matrix(k, gamma);
      const FrozenSpectrum ls = laguerre_roots(k, gamma);
      double lsum = 0.0;
      for (double r : ls.roots) lsum += r;
      lag_root_sum = std::max(lag_root_sum, rel_err(lsum, kd * (kd + gamma - 1.0)));

      const double lnorm = std::max(lf.matrix.norm_inf(), 1e-300);
      for (std::size_t i = 0; i < k; ++i) {
        const std::vector<double> v = ls.eigvectors.col(i);
        lag_residual = std::max(lag_residual, eig_residual(lf.matrix, ls.roots[i], v) / lnorm);
      }

      const FluctuationModel lm = laguerre_fluctuation_model(k, gamma);
      lag_trace = std::max(lag_trace, rel_err(cov_sum(lm.covariance), 2.0 * kd * (kd + gamma - 1.0)));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          cov_asym = std::max(cov_asym, std::abs(lm.covariance(i, j) - lm.covariance(j, i)));
      {
        const EigenResult ec = eigh_symmetric(lm.covariance, false);
        double trace = 0.0;
        for (std::size_t i = 0; i < k; ++i) trace += lm.covariance(i, i);
        psd_worst = std::min(psd_worst, ec.values.back() / trace);
      }
    }
  }

  const std::string range = "[k<=" + std::to_string(k_max) + "]";
  report.add_band("hermite_root_sum" + range, herm_root_sum, 0.0, thr.root_sum_abs, k_max, 0);
  report.add_band("hermite_root_sum_sq" + range, herm_root_sq, 0.0, thr.root_sum_abs, k_max, 0);
  report.add_band("hermite_root_symmetry" + range, herm_symmetry, 0.0, thr.hermite_symmetry, k_max, 0);
  report.add_band("laguerre_root_sum" + range, lag_root_sum, 0.0, thr.root_sum_rel, k_max, 0);
  report.add_band("hermite_eigvec_residual" + range, herm_residual, 0.0, thr.eigvec_residual_rel,
                  k_max, 0);
  report.add_band("laguerre_eigvec_residual" + range, lag_residual, 0.0, thr.eigvec_residual_rel,
                  k_max, 0);
  report.add_band("hermite_cov_trace" + range, herm_trace, 0.0, thr.cov_trace_rel, k_max, 0);
  report.add_band("laguerre_cov_trace" + range, lag_trace, 0.0, thr.cov_trace_rel, k_max, 0);
  report.add_band("cov_symmetry" + range, cov_asym, 0.0, 0.0, k_max, 0);
  report.add_flag("cov_psd_min_ratio" + range, psd_worst, 0.0, thr.psd_rel,
                  psd_worst >= -thr.psd_rel, k_max, 0);
  report.add_band("hermite_var_symmetry" + range, var_sym, 0.0, thr.var_symmetry, k_max, 0);
  return report;
}

HistDistance histogram_distance(const Histogram& hist,
                                const std::function<double(double)>& pdf) {
  HistDistance d;
  double pdf_mass = 0.0;
  double l1 = 0.0;
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    const double a = hist.edges[b];
    const double c = hist.edges[b + 1];
    const double w = c - a;
    // Simpson bin average of the reference density.
    const double fbar = (pdf(a) + 4.0 * pdf(0.5 * (a + c)) + pdf(c)) / 6.0;
    pdf_mass += fbar * w;
    const double diff = std::abs(hist.density[b] - fbar);
    d.sup = std::max(d.sup, diff);
    l1 += diff * w;
  }
  d.tv = 0.5 * (l1 + std::max(0.0, 1.0 - pdf_mass));
  return d;
}

VerificationReport density_agreement_check(const EnsembleSpec& spec, std::size_t n,
                                           std::size_t nbins, std::uint64_t seed,
                                           double mixture_tv_tol) {
  spec.validate();
  if (n < 2) throw std::invalid_argument("density_agreement_check: n too small");
  const VerifyThresholds& thr = default_thresholds();
  const std::size_t k = spec.k;

  const FluctuationModel model = spec.kind == EnsembleKind::hermite
                                     ? hermite_fluctuation_model(k)
                                     : laguerre_fluctuation_model(k, spec.gamma);
  const GaussianMixture mixture = gaussian_mixture(model, spec.beta);

  double lo = 0.0;
  double hi = 0.0;
  default_density_range(spec, lo, hi);

  std::vector<double> pool(n * k);
  parallel_chunks(n, kMcChunk, [&](std::size_t b, std::size_t e, std::size_t chunk) {
    RngStream rng = RngStream::substream(seed, chunk);
    for (std::size_t s = b; s < e; ++s) {
      const std::vector<double> spectrum = sample_spectrum(spec, rng);
      std::copy(spectrum.begin(), spectrum.end(), pool.begin() + s * k);
    }
  });

  const Histogram hist = build_histogram(pool, nbins, lo, hi);

  VerificationReport report;
  const HistDistance dm =
      histogram_distance(hist, [&mixture](double x) { return mixture_pdf(mixture, x); });
  report.add_band("tv_mixture", dm.tv, 0.0, mixture_tv_tol, n, seed);
  report.add_flag("sup_mixture", dm.sup, 0.0, std::numeric_limits<double>::infinity(), true, n,
                  seed);

  if (spec.kind == EnsembleKind::hermite && spec.beta == 2.0) {
    const HistDistance de = histogram_distance(
        hist, [k](double x) { return exact_level_density_beta2(k, x); });
    report.add_band("tv_exact_beta2", de.tv, 0.0, thr.tv_exact_beta2, n, seed);
    report.add_flag("sup_exact_beta2", de.sup, 0.0, std::numeric_limits<double>::infinity(), true,
                    n, seed);
  }

  if (spec.kind == EnsembleKind::laguerre) {
    // The mixture is not truncated at zero even though the spectrum is
    // nonnegative; record how much mass its components put below zero.
    report.add_flag("mixture_mass_below_zero", mixture_cdf(mixture, 0.0), 0.0,
                    std::numeric_limits<double>::infinity(), true, n, seed);
  }

  const double out_frac =
      static_cast<double>(hist.n_below + hist.n_above) / static_cast<double>(hist.n_total);
  report.add_flag("out_of_range_frac", out_frac, 0.0, std::numeric_limits<double>::infinity(),
                  true, n, seed);
  return report;
}

}  // namespace betafreeze
