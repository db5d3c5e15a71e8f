#pragma once

#include <cstddef>
#include <vector>

#include "betafreeze/ensembles.hpp"
#include "betafreeze/matrix.hpp"

namespace betafreeze {

// First-order Gaussian fluctuation law of the eigenvalues around the frozen
// spectrum: sqrt(beta) (lambda_i - means_i) / scale tends to a centered
// k-variate Gaussian G with the given covariance as beta grows.
struct FluctuationModel {
  EnsembleKind kind = EnsembleKind::hermite;
  std::size_t k = 0;
  double gamma = 0.0;  // Laguerre only
  std::vector<double> means;
  Matrix covariance;
  double scale = 0.0;  // 1/sqrt(2k) Hermite, 1/k Laguerre
};

// Hermite law: means h_i / sqrt(2k) and
//   Cov(G_i, G_j) = sum_l u_i[l]^2 u_j[l]^2
//                 + sum_l u_i[l+1] u_i[l] u_j[l+1] u_j[l]
// with u_i the unit-normalized orthonormal Hermite values at the ith root.
FluctuationModel hermite_fluctuation_model(std::size_t k);

// Laguerre law: means l_i / k and the five-term covariance built from the
// unit-normalized orthonormal Laguerre values at the roots (see the source
// for the exact sums).
FluctuationModel laguerre_fluctuation_model(std::size_t k, double gamma);

// Var(G_1) of the Hermite law, computed directly from the top root without
// assembling the whole covariance. Agrees with hermite_fluctuation_model.
double hermite_edge_variance(std::size_t k);

// First-order eigenvalue prediction for A + eps B: lambda_i(A) + eps q_i^T B q_i
// in descending order of lambda_i(A). A must have well-separated eigenvalues
// (gap > 1e-10 * max |lambda|), otherwise throws.
std::vector<double> first_order_eig(const Matrix& a, const Matrix& b, double eps);

struct AiryEdgePoint {
  std::size_t k = 0;
  double m_k = 0.0;  // k^{2/3} (h_1 / sqrt(2k) - 1), trends to a_1 / 2
  double t_k = 0.0;  // k^{1/3} Var(G_1) / 2, trends to the Airy edge variance
};

// Spectral-edge convergence table for inspecting the approach of the largest
// root and its fluctuation variance to the Airy constants.
std::vector<AiryEdgePoint> airy_edge_diagnostic(const std::vector<std::size_t>& k_values);

}  // namespace betafreeze
