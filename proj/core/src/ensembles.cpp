#include "betafreeze/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "betafreeze/orthopoly.hpp"
#include "betafreeze/trieig.hpp"

namespace betafreeze {

namespace {

void check_common(std::size_t k, double beta) {
  if (k == 0) throw std::invalid_argument("EnsembleSpec: k must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("EnsembleSpec: beta must be > 0");
}

}  // namespace

EnsembleSpec EnsembleSpec::hermite(std::size_t k, double beta) {
  check_common(k, beta);
  EnsembleSpec s;
  s.kind = EnsembleKind::hermite;
  s.k = k;
  s.beta = beta;
  return s;
}

EnsembleSpec EnsembleSpec::laguerre_from_gamma(std::size_t k, double beta, double gamma) {
  check_common(k, beta);
  EnsembleSpec s;
  s.kind = EnsembleKind::laguerre;
  s.k = k;
  s.beta = beta;
  s.input = LaguerreInput::fixed_gamma;
  s.gamma = gamma;
  s.a = 0.5 * beta * (static_cast<double>(k) + gamma - 1.0);
  s.p = 0.5 * beta * gamma - 1.0;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::laguerre_from_p(std::size_t k, double beta, double p) {
  check_common(k, beta);
  EnsembleSpec s;
  s.kind = EnsembleKind::laguerre;
  s.k = k;
  s.beta = beta;
  s.input = LaguerreInput::fixed_p;
  s.p = p;
  s.a = p + 0.5 * beta * (static_cast<double>(k) - 1.0);
  s.gamma = 2.0 * (p + 1.0) / beta;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::laguerre_from_a(std::size_t k, double beta, double a) {
  check_common(k, beta);
  EnsembleSpec s;
  s.kind = EnsembleKind::laguerre;
  s.k = k;
  s.beta = beta;
  s.input = LaguerreInput::direct_a;
  s.a = a;
  s.gamma = 2.0 * a / beta - (static_cast<double>(k) - 1.0);
  s.p = 0.5 * beta * s.gamma - 1.0;
  s.validate();
  return s;
}

void EnsembleSpec::validate() const {
  check_common(k, beta);
  if (kind == EnsembleKind::hermite) return;
  const double bound = 0.5 * beta * (static_cast<double>(k) - 1.0);
  if (!(a > bound)) {
    throw std::invalid_argument("EnsembleSpec: Laguerre requires a > (k-1) beta / 2, got a = " +
                                std::to_string(a) + " with (k-1) beta / 2 = " + std::to_string(bound));
  }
  if (!(gamma > 0.0))
    throw std::invalid_argument("EnsembleSpec: resolved gamma must be > 0, got " + std::to_string(gamma));
}

std::string EnsembleSpec::kind_name() const {
  return kind == EnsembleKind::hermite ? "hermite" : "laguerre";
}

double chi_mean(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("chi_mean: r must be > 0");
  return std::exp(0.5 * std::log(2.0) + std::lgamma(0.5 * (r + 1.0)) - std::lgamma(0.5 * r));
}

double sample_chi(double r, RngStream& rng) { return rng.chi(r); }

TridiagonalSym sample_hermite_raw(const EnsembleSpec& spec, RngStream& rng) {
  if (spec.kind != EnsembleKind::hermite)
    throw std::invalid_argument("sample_hermite_raw: spec is not Hermite");
  spec.validate();
  const std::size_t k = spec.k;

  TridiagonalSym t;
  t.diag.resize(k);
  t.offdiag.resize(k - 1);
  // Diagonal N(0,2)/sqrt(2) = N(0,1); off-diagonal chi with (k-j) beta
  // degrees of freedom over sqrt(2), j = 1..k-1.
  for (std::size_t i = 0; i < k; ++i) t.diag[i] = rng.normal();
  for (std::size_t j = 0; j + 1 < k; ++j)
    t.offdiag[j] = rng.chi(static_cast<double>(k - 1 - j) * spec.beta) / std::numbers::sqrt2;
  return t;
}

TridiagonalSym sample_hermite(const EnsembleSpec& spec, RngStream& rng) {
  const TridiagonalSym raw = sample_hermite_raw(spec, rng);
  return raw.scaled(1.0 / std::sqrt(2.0 * static_cast<double>(spec.k) * spec.beta));
}

Bidiagonal sample_laguerre_raw(const EnsembleSpec& spec, RngStream& rng) {
  if (spec.kind != EnsembleKind::laguerre)
    throw std::invalid_argument("sample_laguerre_raw: spec is not Laguerre");
  spec.validate();
  const std::size_t k = spec.k;

  Bidiagonal b;
  b.diag.resize(k);
  b.subdiag.resize(k - 1);
  for (std::size_t j = 0; j < k; ++j)
    b.diag[j] = rng.chi(2.0 * spec.a - spec.beta * static_cast<double>(j));
  for (std::size_t j = 0; j + 1 < k; ++j)
    b.subdiag[j] = rng.chi(spec.beta * static_cast<double>(k - 1 - j));
  return b;
}

TridiagonalSym sample_laguerre(const EnsembleSpec& spec, RngStream& rng) {
  const Bidiagonal raw = sample_laguerre_raw(spec, rng);
  return raw.gram().scaled(1.0 / (static_cast<double>(spec.k) * spec.beta));
}

TridiagonalSym hermite_residual_matrix(const TridiagonalSym& raw, const EnsembleSpec& spec) {
  if (spec.kind != EnsembleKind::hermite)
    throw std::invalid_argument("hermite_residual_matrix: spec is not Hermite");
  if (raw.size() != spec.k)
    throw std::invalid_argument("hermite_residual_matrix: dimension mismatch");
  const TridiagonalSym freeze = hermite_freeze_matrix(spec.k);
  const double sb = std::sqrt(spec.beta);
  TridiagonalSym z = raw;
  for (std::size_t i = 0; i < z.diag.size(); ++i) z.diag[i] -= sb * freeze.diag[i];
  for (std::size_t i = 0; i < z.offdiag.size(); ++i) z.offdiag[i] -= sb * freeze.offdiag[i];
  return z;
}

Bidiagonal laguerre_residual_matrix(const Bidiagonal& raw, const EnsembleSpec& spec) {
  if (spec.kind != EnsembleKind::laguerre)
    throw std::invalid_argument("laguerre_residual_matrix: spec is not Laguerre");
  if (raw.size() != spec.k)
    throw std::invalid_argument("laguerre_residual_matrix: dimension mismatch");
  const LaguerreFreeze freeze = laguerre_freeze_matrix(spec.k, spec.gamma);
  const double sb = std::sqrt(spec.beta);
  Bidiagonal z = raw;
  for (std::size_t i = 0; i < z.diag.size(); ++i) z.diag[i] -= sb * freeze.factor.diag[i];
  for (std::size_t i = 0; i < z.subdiag.size(); ++i) z.subdiag[i] -= sb * freeze.factor.subdiag[i];
  return z;
}

std::vector<double> sample_spectrum(const EnsembleSpec& spec, RngStream& rng) {
  TridiagonalSym sample = spec.kind == EnsembleKind::hermite ? sample_hermite(spec, rng)
                                                             : sample_laguerre(spec, rng);
  EigenResult eig = eigh_tridiagonal(sample, false);
  if (spec.kind == EnsembleKind::laguerre) {
    // Gram matrix, so the spectrum is nonnegative; round-off may leak tiny
    // negatives on the smallest eigenvalue.
    const double floor = -1e-12 * sample.norm_inf();
    for (double& v : eig.values)
      if (v < 0.0 && v > floor) v = 0.0;
  }
  return std::move(eig.values);
}

}  // namespace betafreeze
