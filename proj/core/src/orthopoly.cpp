#include "betafreeze/orthopoly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "betafreeze/trieig.hpp"

namespace betafreeze {

namespace {

// Jacobi recurrence coefficients of an orthonormal family:
//   b(m+1) p_{m+1} = (x - a(m)) p_m - b(m) p_{m-1}.
struct HermiteCoeffs {
  double a(std::size_t) const { return 0.0; }
  double b(std::size_t m) const { return std::sqrt(0.5 * static_cast<double>(m)); }
};

struct LaguerreCoeffs {
  double gamma;
  double a(std::size_t m) const { return 2.0 * static_cast<double>(m) + gamma + 1.0; }
  double b(std::size_t m) const {
    const double md = static_cast<double>(m);
    return std::sqrt(md * (md + gamma));
  }
};

// Runs the recurrence for p_0 .. p_{count-1} at x with p_0 = 1, rescaling the
// stored prefix whenever values threaten the double range. True values are
// v[m] * exp(log_scale) times the family's degree-0 constant.
template <class Coeffs>
void recurrence_values(const Coeffs& c, std::size_t count, double x,
                       std::vector<double>& v, double& log_scale) {
  v.assign(count, 0.0);
  log_scale = 0.0;
  v[0] = 1.0;
  if (count == 1) return;
  v[1] = (x - c.a(0)) / c.b(1);
  constexpr double kCap = 1e280;
  for (std::size_t m = 1; m + 1 < count; ++m) {
    v[m + 1] = ((x - c.a(m)) * v[m] - c.b(m) * v[m - 1]) / c.b(m + 1);
    if (std::abs(v[m + 1]) > kCap) {
      for (std::size_t j = 0; j <= m + 1; ++j) v[j] /= kCap;
      log_scale += std::log(kCap);
    }
  }
}

std::vector<double> unit_normalized(std::vector<double> v) {
  // Pre-scale by the largest magnitude so the squared sum cannot overflow.
  double max_abs = 0.0;
  for (double x : v) max_abs = std::max(max_abs, std::abs(x));
  if (max_abs == 0.0) throw std::runtime_error("orthopoly: degenerate polynomial value vector");
  for (double& x : v) x /= max_abs;
  const double n = norm2(v);
  for (double& x : v) x /= n;
  return v;
}

// Shared root/eigenvector construction: eigenvalues from the QL solver, then
// eigenvector column i assembled from the unit polynomial values at root i in
// reversed degree order (degree k-1 on top), sign fixed on the top entry.
template <class UnitValues>
FrozenSpectrum spectrum_from_freeze(const TridiagonalSym& freeze, const UnitValues& unit_values) {
  const std::size_t k = freeze.size();
  EigenResult eig = eigh_tridiagonal(freeze, false);

  FrozenSpectrum fs;
  fs.roots = std::move(eig.values);
  fs.eigvectors = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::vector<double> u = unit_values(fs.roots[i]);
    const double sign = u[k - 1] >= 0.0 ? 1.0 : -1.0;
    for (std::size_t r = 0; r < k; ++r) fs.eigvectors(r, i) = sign * u[k - 1 - r];
  }
  return fs;
}

}  // namespace

std::vector<double> hermite_orthonormal_eval(std::size_t n, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("hermite_orthonormal_eval: x must be finite");
  std::vector<double> v;
  double log_scale = 0.0;
  recurrence_values(HermiteCoeffs{}, n + 1, x, v, log_scale);
  const double h0 = std::pow(std::numbers::pi, -0.25);
  const double factor = h0 * std::exp(log_scale);
  for (double& val : v) val *= factor;
  return v;
}

std::vector<double> laguerre_orthonormal_eval(std::size_t n, double gamma, double x) {
  if (!(gamma > 0.0)) throw std::invalid_argument("laguerre_orthonormal_eval: gamma must be > 0");
  if (!std::isfinite(x)) throw std::invalid_argument("laguerre_orthonormal_eval: x must be finite");
  std::vector<double> v;
  double log_scale = 0.0;
  recurrence_values(LaguerreCoeffs{gamma}, n + 1, x, v, log_scale);
  const double l0 = std::exp(-0.5 * std::lgamma(gamma + 1.0));
  const double factor = l0 * std::exp(log_scale);
  for (double& val : v) val *= factor;
  return v;
}

TridiagonalSym hermite_freeze_matrix(std::size_t k) {
  if (k == 0) throw std::invalid_argument("hermite_freeze_matrix: k must be >= 1");
  TridiagonalSym t;
  t.diag.assign(k, 0.0);
  t.offdiag.resize(k - 1);
  for (std::size_t j = 0; j + 1 < k; ++j)
    t.offdiag[j] = std::sqrt(static_cast<double>(k - 1 - j)) / std::numbers::sqrt2;
  return t;
}

LaguerreFreeze laguerre_freeze_matrix(std::size_t k, double gamma) {
  if (k == 0) throw std::invalid_argument("laguerre_freeze_matrix: k must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("laguerre_freeze_matrix: gamma must be > 0");
  const double kd = static_cast<double>(k);

  LaguerreFreeze f;
  f.matrix.diag.resize(k);
  f.matrix.offdiag.resize(k - 1);
  f.factor.diag.resize(k);
  f.factor.subdiag.resize(k - 1);

  f.matrix.diag[0] = gamma + kd - 1.0;
  for (std::size_t i = 1; i < k; ++i)
    f.matrix.diag[i] = 2.0 * (kd - static_cast<double>(i) - 1.0) + gamma + 1.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double id = static_cast<double>(i);
    f.matrix.offdiag[i] = std::sqrt(gamma + kd - 1.0 - id) * std::sqrt(kd - 1.0 - id);
  }
  for (std::size_t i = 0; i < k; ++i)
    f.factor.diag[i] = std::sqrt(gamma + kd - 1.0 - static_cast<double>(i));
  for (std::size_t i = 0; i + 1 < k; ++i)
    f.factor.subdiag[i] = std::sqrt(kd - 1.0 - static_cast<double>(i));
  return f;
}

FrozenSpectrum hermite_roots(std::size_t k) {
  const TridiagonalSym freeze = hermite_freeze_matrix(k);
  return spectrum_from_freeze(freeze, [k](double x) { return hermite_unit_values(k, x); });
}

FrozenSpectrum laguerre_roots(std::size_t k, double gamma) {
  const LaguerreFreeze freeze = laguerre_freeze_matrix(k, gamma);
  return spectrum_from_freeze(freeze.matrix,
                              [k, gamma](double x) { return laguerre_unit_values(k, gamma, x); });
}

std::vector<double> hermite_unit_values(std::size_t k, double x) {
  if (k == 0) throw std::invalid_argument("hermite_unit_values: k must be >= 1");
  std::vector<double> v;
  double log_scale = 0.0;
  recurrence_values(HermiteCoeffs{}, k, x, v, log_scale);
  return unit_normalized(std::move(v));
}

std::vector<double> laguerre_unit_values(std::size_t k, double gamma, double x) {
  if (k == 0) throw std::invalid_argument("laguerre_unit_values: k must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("laguerre_unit_values: gamma must be > 0");
  std::vector<double> v;
  double log_scale = 0.0;
  recurrence_values(LaguerreCoeffs{gamma}, k, x, v, log_scale);
  return unit_normalized(std::move(v));
}

}  // namespace betafreeze
