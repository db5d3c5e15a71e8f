// betafreeze command line front end: ensemble sampling, fluctuation-model
// export, level-density grids, verification suites, and the spectral-edge
// diagnostic. Identical command lines produce byte-identical output files.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "betafreeze/density.hpp"
#include "betafreeze/ensembles.hpp"
#include "betafreeze/fluctuations.hpp"
#include "betafreeze/format.hpp"
#include "betafreeze/parallel.hpp"
#include "betafreeze/rng.hpp"
#include "betafreeze/verify.hpp"
#include "betafreeze/version.hpp"

namespace bf = betafreeze;

namespace {

constexpr std::size_t kSampleChunk = 256;

struct SpecOptions {
  std::string ensemble = "hermite";
  std::size_t k = 1;
  double beta = 1.0;
  double gamma = 0.0;
  double p = 0.0;
  double a = 0.0;
  bool has_gamma = false;
  bool has_p = false;
  bool has_a = false;
};

void add_spec_flags(CLI::App* cmd, SpecOptions& opts, bool beta_required) {
  cmd->add_option("--ensemble", opts.ensemble, "Ensemble kind: hermite | laguerre")
      ->check(CLI::IsMember({"hermite", "laguerre"}))
      ->required();
  cmd->add_option("--k", opts.k, "Matrix size k >= 1")->required();
  auto* beta = cmd->add_option("--beta", opts.beta, "Inverse temperature beta > 0");
  if (beta_required) beta->required();
  cmd->add_option("--gamma", opts.gamma, "Laguerre: hold gamma fixed (case a)")
      ->each([&opts](const std::string&) { opts.has_gamma = true; });
  cmd->add_option("--p", opts.p, "Laguerre: hold the weight power p fixed (case b)")
      ->each([&opts](const std::string&) { opts.has_p = true; });
  cmd->add_option("--a", opts.a, "Laguerre: give the ensemble parameter a directly")
      ->each([&opts](const std::string&) { opts.has_a = true; });
}

bf::EnsembleSpec resolve_spec(const SpecOptions& opts) {
  const int given = int(opts.has_gamma) + int(opts.has_p) + int(opts.has_a);
  if (opts.ensemble == "hermite") {
    if (given != 0)
      throw CLI::ValidationError("--gamma/--p/--a only apply to the Laguerre ensemble");
    return bf::EnsembleSpec::hermite(opts.k, opts.beta);
  }
  if (given != 1)
    throw CLI::ValidationError("Laguerre requires exactly one of --gamma, --p, --a");
  if (opts.has_gamma) return bf::EnsembleSpec::laguerre_from_gamma(opts.k, opts.beta, opts.gamma);
  if (opts.has_p) return bf::EnsembleSpec::laguerre_from_p(opts.k, opts.beta, opts.p);
  return bf::EnsembleSpec::laguerre_from_a(opts.k, opts.beta, opts.a);
}

std::string spec_kv(const bf::EnsembleSpec& spec) {
  std::ostringstream os;
  os << "ensemble=" << spec.kind_name() << " k=" << spec.k << " beta=" << bf::to_string_17g(spec.beta);
  if (spec.kind == bf::EnsembleKind::laguerre) {
    os << " a=" << bf::to_string_17g(spec.a) << " gamma=" << bf::to_string_17g(spec.gamma)
       << " p=" << bf::to_string_17g(spec.p) << " given=";
    switch (spec.input) {
      case bf::LaguerreInput::direct_a: os << "a"; break;
      case bf::LaguerreInput::fixed_gamma: os << "gamma"; break;
      case bf::LaguerreInput::fixed_p: os << "p"; break;
    }
  }
  return os.str();
}

std::string spec_json(const bf::EnsembleSpec& spec) {
  std::ostringstream os;
  os << "{\"kind\":\"" << spec.kind_name() << "\",\"k\":" << spec.k
     << ",\"beta\":" << bf::to_string_17g(spec.beta);
  if (spec.kind == bf::EnsembleKind::laguerre) {
    os << ",\"a\":" << bf::to_string_17g(spec.a) << ",\"gamma\":" << bf::to_string_17g(spec.gamma)
       << ",\"p\":" << bf::to_string_17g(spec.p) << ",\"given\":\"";
    switch (spec.input) {
      case bf::LaguerreInput::direct_a: os << "a"; break;
      case bf::LaguerreInput::fixed_gamma: os << "gamma"; break;
      case bf::LaguerreInput::fixed_p: os << "p"; break;
    }
    os << "\"";
  }
  os << "}";
  return os.str();
}

// Output sink: file when --out given, stdout otherwise.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

int cmd_sample(const SpecOptions& opts, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
  const bf::EnsembleSpec spec = resolve_spec(opts);
  const std::size_t k = spec.k;

  std::vector<double> values(n * k);
  bf::parallel_chunks(n, kSampleChunk, [&](std::size_t b, std::size_t e, std::size_t chunk) {
    bf::RngStream rng = bf::RngStream::substream(seed, chunk);
    for (std::size_t s = b; s < e; ++s) {
      const std::vector<double> spectrum = bf::sample_spectrum(spec, rng);
      std::copy(spectrum.begin(), spectrum.end(), values.begin() + s * k);
    }
  });

  Output out(out_path);
  std::ostream& os = out.stream();
  os << "# betafreeze " << bf::kVersion << " sample " << spec_kv(spec) << " n=" << n
     << " seed=" << seed << "\n";
  os << "sample_index,eig_index,value\n";
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < k; ++i)
      os << s << "," << (i + 1) << "," << bf::to_string_17g(values[s * k + i]) << "\n";
  return 0;
}

int cmd_model(const SpecOptions& opts, const std::string& out_path) {
  const bf::EnsembleSpec spec = resolve_spec(opts);
  const bf::FluctuationModel model =
      spec.kind == bf::EnsembleKind::hermite
          ? bf::hermite_fluctuation_model(spec.k)
          : bf::laguerre_fluctuation_model(spec.k, spec.gamma);

  Output out(out_path);
  std::ostream& os = out.stream();
  os << "{\"meta\":{\"version\":\"" << bf::kVersion << "\",\"command\":\"model\",\"spec\":"
     << spec_json(spec) << "},";
  os << "\"kind\":\"" << spec.kind_name() << "\",\"k\":" << model.k;
  if (model.kind == bf::EnsembleKind::laguerre)
    os << ",\"gamma\":" << bf::to_string_17g(model.gamma);
  os << ",\"means\":[";
  for (std::size_t i = 0; i < model.k; ++i) {
    if (i) os << ",";
    os << bf::to_string_17g(model.means[i]);
  }
  os << "],\"covariance\":[";
  for (std::size_t i = 0; i < model.k; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < model.k; ++j) {
      if (j) os << ",";
      os << bf::to_string_17g(model.covariance(i, j));
    }
    os << "]";
  }
  os << "],\"scale\":" << bf::to_string_17g(model.scale) << "}\n";
  return 0;
}

int cmd_density(const SpecOptions& opts, std::size_t grid, std::string range,
                const std::string& out_path) {
  const bf::EnsembleSpec spec = resolve_spec(opts);
  const bf::FluctuationModel model =
      spec.kind == bf::EnsembleKind::hermite
          ? bf::hermite_fluctuation_model(spec.k)
          : bf::laguerre_fluctuation_model(spec.k, spec.gamma);
  const bf::GaussianMixture mixture = bf::gaussian_mixture(model, spec.beta);

  double lo = 0.0;
  double hi = 0.0;
  if (range.empty()) {
    bf::default_density_range(spec, lo, hi);
  } else {
    const auto colon = range.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--range must be lo:hi");
    lo = std::stod(range.substr(0, colon));
    hi = std::stod(range.substr(colon + 1));
    if (!(lo < hi)) throw CLI::ValidationError("--range requires lo < hi");
  }

  const bool hermite = spec.kind == bf::EnsembleKind::hermite;
  const bool exact = hermite && spec.beta == 2.0;

  Output out(out_path);
  std::ostream& os = out.stream();
  os << "# betafreeze " << bf::kVersion << " density " << spec_kv(spec) << " grid=" << grid
     << " range=" << bf::to_string_17g(lo) << ":" << bf::to_string_17g(hi) << "\n";
  os << "x,mixture,exact_beta2,semicircle\n";
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = grid == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                          static_cast<double>(grid - 1);
    os << bf::to_string_17g(x) << "," << bf::to_string_17g(bf::mixture_pdf(mixture, x)) << ",";
    if (exact) os << bf::to_string_17g(bf::exact_level_density_beta2(spec.k, x));
    os << ",";
    if (hermite) os << bf::to_string_17g(bf::semicircle_pdf(x));
    os << "\n";
  }
  return 0;
}

struct VerifyOptions {
  std::string suite = "all";
  std::size_t kmax = 20;
  std::vector<double> gammas = {0.5, 1.0, 5.0};
  double r = 1e4;
  std::uint64_t seed = 42;
  std::size_t nbins = 50;
  // Unset sentinels; per-suite defaults fill them in.
  std::size_t n = 0;
  SpecOptions spec_opts;  // k = 0 / beta = 0 mean "not given"
};

bf::EnsembleSpec verify_spec(const VerifyOptions& v, std::size_t default_k, double default_beta) {
  SpecOptions so = v.spec_opts;
  if (so.k == 0) so.k = default_k;
  if (so.beta == 0.0) so.beta = default_beta;
  if (so.ensemble == "laguerre" && !so.has_gamma && !so.has_p && !so.has_a) {
    so.gamma = 1.0;
    so.has_gamma = true;
  }
  return resolve_spec(so);
}

int cmd_verify(const VerifyOptions& v, const std::string& out_path) {
  bf::VerificationReport report;
  const bool all = v.suite == "all";
  std::string resolved_specs;

  if (all || v.suite == "invariants") {
    report.append(bf::invariant_suite(v.kmax, v.gammas));
  }
  if (all || v.suite == "chi") {
    const std::size_t n = v.n ? v.n : 100000;
    const bf::VerificationReport near = bf::chi_normal_limit_check(v.r, n, v.seed);
    const bf::VerificationReport far = bf::chi_normal_limit_check(100.0 * v.r, n, v.seed);
    const double d_near = near.checks.front().observed;
    const double d_far = far.checks.front().observed;
    report.append(near);
    report.append(far);
    report.add_flag("chi_ks_trend[r->100r]", d_far, d_near, 0.0, d_far < d_near, n, v.seed);
  }
  if (all || v.suite == "fluctuations") {
    const std::size_t n = v.n ? v.n : 100000;
    const bf::EnsembleSpec spec = verify_spec(v, 2, 1e4);
    resolved_specs += ",\"fluctuations_spec\":" + spec_json(spec);
    report.append(bf::fluctuation_mc_check(spec, n, v.seed));
  }
  if (all || v.suite == "perturbation") {
    const std::vector<double> eps = {1e-2, 5e-3, 2.5e-3};
    report.append(bf::perturbation_order_check(6, eps, v.seed));
  }
  if (all || v.suite == "density") {
    const std::size_t n = v.n ? v.n : 40000;
    const bf::EnsembleSpec spec = verify_spec(v, 4, 2.0);
    resolved_specs += ",\"density_spec\":" + spec_json(spec);
    report.append(bf::density_agreement_check(spec, n, v.nbins, v.seed));
  }

  Output out(out_path);
  std::ostream& os = out.stream();
  // Report schema {checks: [...], overall} at top level, meta alongside;
  // per-check n and seed live in the check entries.
  const std::string body = report.to_json();
  os << "{\"meta\":{\"version\":\"" << bf::kVersion << "\",\"command\":\"verify\",\"suite\":\""
     << v.suite << "\",\"seed\":" << v.seed << resolved_specs << "}," << body.substr(1) << "\n";
  return report.overall() ? 0 : 1;
}

int cmd_diag_airy(const std::string& kvals, const std::string& out_path) {
  std::vector<std::size_t> ks;
  std::stringstream ss(kvals);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const long v = std::stol(item);
    if (v < 2) throw CLI::ValidationError("--kvals entries must be >= 2");
    ks.push_back(static_cast<std::size_t>(v));
  }
  if (ks.empty()) throw CLI::ValidationError("--kvals is empty");

  const std::vector<bf::AiryEdgePoint> table = bf::airy_edge_diagnostic(ks);

  Output out(out_path);
  std::ostream& os = out.stream();
  os << "# betafreeze " << bf::kVersion << " diag airy kvals=" << kvals << "\n";
  os << "k,m_k,t_k\n";
  for (const bf::AiryEdgePoint& row : table)
    os << row.k << "," << bf::to_string_17g(row.m_k) << "," << bf::to_string_17g(row.t_k) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beta-Hermite / beta-Laguerre tridiagonal ensembles: sampling, frozen spectra, "
               "Gaussian fluctuation models, level densities, and statistical verification"};
  app.require_subcommand(1);

  // sample
  SpecOptions sample_spec;
  std::size_t sample_n = 1000;
  std::uint64_t sample_seed = 42;
  std::string sample_out;
  CLI::App* sample = app.add_subcommand("sample", "Sample spectra and emit CSV");
  add_spec_flags(sample, sample_spec, true);
  sample->add_option("--n", sample_n, "Number of matrix samples")->required();
  sample->add_option("--seed", sample_seed, "Random seed");
  sample->add_option("--out", sample_out, "Output CSV path (default stdout)");

  // model
  SpecOptions model_spec;
  std::string model_out;
  CLI::App* model = app.add_subcommand("model", "Emit the fluctuation model as JSON");
  add_spec_flags(model, model_spec, false);
  model->add_option("--out", model_out, "Output JSON path (default stdout)");

  // density
  SpecOptions density_spec;
  std::size_t density_grid = 512;
  std::string density_range;
  std::string density_out;
  CLI::App* density = app.add_subcommand("density", "Emit level-density curves as CSV");
  add_spec_flags(density, density_spec, true);
  density->add_option("--grid", density_grid, "Number of grid points (default 512)");
  density->add_option("--range", density_range, "Grid range lo:hi (default per ensemble)");
  density->add_option("--out", density_out, "Output CSV path (default stdout)");

  // verify
  VerifyOptions verify_opts;
  verify_opts.spec_opts.k = 0;
  verify_opts.spec_opts.beta = 0.0;
  std::string verify_out;
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites, emit a JSON report");
  verify->add_option("--suite", verify_opts.suite, "invariants | chi | fluctuations | perturbation | density | all")
      ->check(CLI::IsMember({"invariants", "chi", "fluctuations", "perturbation", "density", "all"}));
  verify->add_option("--kmax", verify_opts.kmax, "Invariant suite: largest k");
  verify->add_option("--gammas", verify_opts.gammas, "Invariant suite: gamma values");
  verify->add_option("--r", verify_opts.r, "Chi suite: degrees of freedom");
  verify->add_option("--n", verify_opts.n, "Monte Carlo sample count (per-suite default if omitted)");
  verify->add_option("--seed", verify_opts.seed, "Random seed");
  verify->add_option("--nbins", verify_opts.nbins, "Density suite: histogram bins");
  verify->add_option("--ensemble", verify_opts.spec_opts.ensemble, "MC suites: hermite | laguerre")
      ->check(CLI::IsMember({"hermite", "laguerre"}));
  verify->add_option("--k", verify_opts.spec_opts.k, "MC suites: matrix size");
  verify->add_option("--beta", verify_opts.spec_opts.beta, "MC suites: inverse temperature");
  verify->add_option("--gamma", verify_opts.spec_opts.gamma, "MC suites: Laguerre gamma")
      ->each([&verify_opts](const std::string&) { verify_opts.spec_opts.has_gamma = true; });
  verify->add_option("--p", verify_opts.spec_opts.p, "MC suites: Laguerre weight power")
      ->each([&verify_opts](const std::string&) { verify_opts.spec_opts.has_p = true; });
  verify->add_option("--a", verify_opts.spec_opts.a, "MC suites: Laguerre parameter a")
      ->each([&verify_opts](const std::string&) { verify_opts.spec_opts.has_a = true; });
  verify->add_option("--out", verify_out, "Output JSON path (default stdout)");

  // diag airy
  CLI::App* diag = app.add_subcommand("diag", "Diagnostics");
  std::string airy_kvals = "2,4,8,16,32,64,128,256,400";
  std::string airy_out;
  CLI::App* airy = diag->add_subcommand("airy", "Spectral-edge convergence table (k, m_k, t_k)");
  airy->add_option("--kvals", airy_kvals, "Comma-separated k values (each >= 2)");
  airy->add_option("--out", airy_out, "Output CSV path (default stdout)");
  diag->require_subcommand(1);

  try {
    app.parse(argc, argv);
    if (sample->parsed()) return cmd_sample(sample_spec, sample_n, sample_seed, sample_out);
    if (model->parsed()) return cmd_model(model_spec, model_out);
    if (density->parsed()) return cmd_density(density_spec, density_grid, density_range, density_out);
    if (verify->parsed()) return cmd_verify(verify_opts, verify_out);
    if (diag->parsed() && airy->parsed()) return cmd_diag_airy(airy_kvals, airy_out);
    std::cerr << app.help() << std::endl;
    return 2;
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help() << std::endl;
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << std::endl;
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
