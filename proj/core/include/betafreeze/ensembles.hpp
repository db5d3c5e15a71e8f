#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "betafreeze/matrix.hpp"
#include "betafreeze/rng.hpp"

namespace betafreeze {

enum class EnsembleKind { hermite, laguerre };

// Which Laguerre parameter the caller supplied; the other two are resolved.
enum class LaguerreInput { direct_a, fixed_gamma, fixed_p };

// Ensemble description. For Laguerre the parameters are linked through
//   fixed gamma:  a = (beta/2)(k + gamma - 1),   p = (beta/2) gamma - 1
//   fixed p:      a = p + (beta/2)(k - 1),       gamma = 2 (p + 1) / beta
//   direct a:     gamma = 2 a / beta - (k - 1),  p = (beta/2) gamma - 1
// and the constraint a > (k-1) beta / 2 (equivalently gamma > 0) must hold.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::hermite;
  std::size_t k = 1;
  double beta = 1.0;

  // Laguerre only.
  double a = 0.0;
  double gamma = 0.0;
  double p = 0.0;
  LaguerreInput input = LaguerreInput::fixed_gamma;

  static EnsembleSpec hermite(std::size_t k, double beta);
  static EnsembleSpec laguerre_from_gamma(std::size_t k, double beta, double gamma);
  static EnsembleSpec laguerre_from_p(std::size_t k, double beta, double p);
  static EnsembleSpec laguerre_from_a(std::size_t k, double beta, double a);

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  std::string kind_name() const;
};

// Exact mean of the chi_r distribution, sqrt(2) Gamma((r+1)/2) / Gamma(r/2),
// evaluated through log-gamma so large r stays finite.
double chi_mean(double r);

// One chi_r draw.
double sample_chi(double r, RngStream& rng);

// Hermite sample with entries as drawn: diagonal N(0,2)/sqrt(2) and
// off-diagonal chi_{(k-j) beta}/sqrt(2), no global scaling. Draw order is
// diagonal first, then off-diagonal, top to bottom.
TridiagonalSym sample_hermite_raw(const EnsembleSpec& spec, RngStream& rng);

// Hermite sample scaled by 1/sqrt(2 k beta).
TridiagonalSym sample_hermite(const EnsembleSpec& spec, RngStream& rng);

// Laguerre bidiagonal factor with diag_j = chi_{2a - beta (j-1)} and
// subdiag_j = chi_{beta (k-j)}, no global scaling. Diagonal drawn first.
Bidiagonal sample_laguerre_raw(const EnsembleSpec& spec, RngStream& rng);

// Laguerre sample B B^T / (k beta), kept tridiagonal (never dense).
TridiagonalSym sample_laguerre(const EnsembleSpec& spec, RngStream& rng);

// Residual of a raw Hermite sample against the frozen tridiagonal:
// Z = raw - sqrt(beta) H. Entries converge in law to N(0,1) on the diagonal
// and N(0,1/4) off the diagonal as beta grows.
TridiagonalSym hermite_residual_matrix(const TridiagonalSym& raw, const EnsembleSpec& spec);

// Residual of a raw Laguerre bidiagonal against sqrt(beta) B_gamma; entries
// converge in law to N(0,1/2).
Bidiagonal laguerre_residual_matrix(const Bidiagonal& raw, const EnsembleSpec& spec);

// Eigenvalues of one sample in scaled units, descending. Laguerre eigenvalues
// are clamped to zero when round-off drags them barely negative.
std::vector<double> sample_spectrum(const EnsembleSpec& spec, RngStream& rng);

}  // namespace betafreeze
