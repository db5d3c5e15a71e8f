#include "betafreeze/fluctuations.hpp"

#include <cmath>
#include <stdexcept>

#include "betafreeze/orthopoly.hpp"
#include "betafreeze/trieig.hpp"

namespace betafreeze {

namespace {

// Covariance entry of the Hermite fluctuation law from unit-normalized
// polynomial value vectors u_i, u_j:
//   sum_{l=0}^{k-1} u_i[l]^2 u_j[l]^2
// + sum_{l=0}^{k-2} u_i[l+1] u_i[l] u_j[l+1] u_j[l].
// The normalization cancels the printed denominator exactly.
double hermite_cov_entry(const std::vector<double>& ui, const std::vector<double>& uj) {
  const std::size_t k = ui.size();
  double diag_sum = 0.0;
  double off_sum = 0.0;
  for (std::size_t l = 0; l < k; ++l) diag_sum += ui[l] * ui[l] * uj[l] * uj[l];
  for (std::size_t l = 0; l + 1 < k; ++l)
    off_sum += ui[l + 1] * ui[l] * uj[l + 1] * uj[l];
  return diag_sum + off_sum;
}

// Covariance entry of the Laguerre fluctuation law from unit-normalized
// value vectors q_i, q_j (degree index ascending), written with m = k - l:
//   2 [ (gamma+k-1) q_i[k-1]^2 q_j[k-1]^2
//     + sum_{m=1}^{k-1} (gamma+2m-1) q_i[m-1]^2 q_j[m-1]^2
//     + sum_{m=1}^{k-1} (gamma+2m)   (q_i[m-1] q_i[m]) (q_j[m-1] q_j[m])
//     + sum_{m=1}^{k-1} sqrt((gamma+m) m) ( q_i[m-1]^2 q_j[m-1] q_j[m]
//                                         + q_j[m-1]^2 q_i[m-1] q_i[m] )
//     + sum_{m=1}^{k-1} sqrt((gamma+m) m) ( q_i[m]^2 q_j[m-1] q_j[m]
//                                         + q_j[m]^2 q_i[m-1] q_i[m] ) ].
double laguerre_cov_entry(double gamma, const std::vector<double>& qi,
                          const std::vector<double>& qj) {
  const std::size_t k = qi.size();
  const double kd = static_cast<double>(k);
  double total = (gamma + kd - 1.0) * qi[k - 1] * qi[k - 1] * qj[k - 1] * qj[k - 1];
  for (std::size_t m = 1; m < k; ++m) {
    const double md = static_cast<double>(m);
    const double lo_i = qi[m - 1];
    const double hi_i = qi[m];
    const double lo_j = qj[m - 1];
    const double hi_j = qj[m];
    total += (gamma + 2.0 * md - 1.0) * lo_i * lo_i * lo_j * lo_j;
    total += (gamma + 2.0 * md) * (lo_i * hi_i) * (lo_j * hi_j);
    const double root = std::sqrt((gamma + md) * md);
    total += root * (lo_i * lo_i * lo_j * hi_j + lo_j * lo_j * lo_i * hi_i);
    total += root * (hi_i * hi_i * lo_j * hi_j + hi_j * hi_j * lo_i * hi_i);
  }
  return 2.0 * total;
}

}  // namespace

FluctuationModel hermite_fluctuation_model(std::size_t k) {
  if (k == 0) throw std::invalid_argument("hermite_fluctuation_model: k must be >= 1");
  const FrozenSpectrum fs = hermite_roots(k);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(k));

  FluctuationModel model;
  model.kind = EnsembleKind::hermite;
  model.k = k;
  model.scale = scale;
  model.means.resize(k);
  for (std::size_t i = 0; i < k; ++i) model.means[i] = fs.roots[i] * scale;

  std::vector<std::vector<double>> units(k);
  for (std::size_t i = 0; i < k; ++i) units[i] = hermite_unit_values(k, fs.roots[i]);

  model.covariance = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double c = hermite_cov_entry(units[i], units[j]);
      model.covariance(i, j) = c;
      model.covariance(j, i) = c;
    }
  }
  return model;
}

FluctuationModel laguerre_fluctuation_model(std::size_t k, double gamma) {
  if (k == 0) throw std::invalid_argument("laguerre_fluctuation_model: k must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("laguerre_fluctuation_model: gamma must be > 0");
  const FrozenSpectrum fs = laguerre_roots(k, gamma);
  const double scale = 1.0 / static_cast<double>(k);

  FluctuationModel model;
  model.kind = EnsembleKind::laguerre;
  model.k = k;
  model.gamma = gamma;
  model.scale = scale;
  model.means.resize(k);
  for (std::size_t i = 0; i < k; ++i) model.means[i] = fs.roots[i] * scale;

  std::vector<std::vector<double>> units(k);
  for (std::size_t i = 0; i < k; ++i) units[i] = laguerre_unit_values(k, gamma, fs.roots[i]);

  model.covariance = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double c = laguerre_cov_entry(gamma, units[i], units[j]);
      model.covariance(i, j) = c;
      model.covariance(j, i) = c;
    }
  }
  return model;
}

double hermite_edge_variance(std::size_t k) {
  if (k == 0) throw std::invalid_argument("hermite_edge_variance: k must be >= 1");
  const TridiagonalSym freeze = hermite_freeze_matrix(k);
  const EigenResult eig = eigh_tridiagonal(freeze, false);
  const std::vector<double> u = hermite_unit_values(k, eig.values[0]);
  return hermite_cov_entry(u, u);
}

std::vector<double> first_order_eig(const Matrix& a, const Matrix& b, double eps) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw std::invalid_argument("first_order_eig: dimension mismatch");

  const EigenResult ea = eigh_symmetric(a, true);
  const Matrix& q = *ea.vectors;

  double max_abs = 0.0;
  for (double v : ea.values) max_abs = std::max(max_abs, std::abs(v));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (ea.values[i] - ea.values[i + 1] <= 1e-10 * max_abs)
      throw std::invalid_argument("first_order_eig: A has a degenerate spectrum");
  }

  std::vector<double> result(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Rayleigh-quotient correction q_i^T B q_i.
    double quad = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double brow = 0.0;
      for (std::size_t c = 0; c < n; ++c) brow += b(r, c) * q(c, i);
      quad += q(r, i) * brow;
    }
    result[i] = ea.values[i] + eps * quad;
  }
  return result;
}

std::vector<AiryEdgePoint> airy_edge_diagnostic(const std::vector<std::size_t>& k_values) {
  std::vector<AiryEdgePoint> table;
  table.reserve(k_values.size());
  for (std::size_t k : k_values) {
    if (k < 2) throw std::invalid_argument("airy_edge_diagnostic: each k must be >= 2");
    const double kd = static_cast<double>(k);
    const TridiagonalSym freeze = hermite_freeze_matrix(k);
    const EigenResult eig = eigh_tridiagonal(freeze, false);
    const double top = eig.values[0] / std::sqrt(2.0 * kd);
    AiryEdgePoint row;
    row.k = k;
    row.m_k = std::cbrt(kd * kd) * (top - 1.0);
    row.t_k = std::cbrt(kd) * hermite_edge_variance(k) / 2.0;
    table.push_back(row);
  }
  return table;
}

}  // namespace betafreeze
