#pragma once

#include <cstddef>
#include <vector>

#include "betafreeze/matrix.hpp"

namespace betafreeze {

// Roots of an orthogonal polynomial together with the eigenvectors of its
// Jacobi-type matrix. Roots are strictly descending; eigenvector columns are
// unit norm with positive first nonzero entry, column i matching roots[i].
struct FrozenSpectrum {
  std::vector<double> roots;
  Matrix eigvectors;
};

// Values H~_0(x) .. H~_n(x) of the Hermite polynomials orthonormal with
// respect to exp(-x^2), via the recurrence
//   x H~_m = sqrt((m+1)/2) H~_{m+1} + sqrt(m/2) H~_{m-1},  H~_0 = pi^{-1/4}.
std::vector<double> hermite_orthonormal_eval(std::size_t n, double x);

// Values L~_0(x) .. L~_n(x) of the Laguerre polynomials orthonormal with
// respect to x^gamma exp(-x) on [0, inf), in the positive-leading-coefficient
// normalization:
//   sqrt((m+1)(m+gamma+1)) L~_{m+1} = (x - (2m+gamma+1)) L~_m
//                                     - sqrt(m(m+gamma)) L~_{m-1},
// with L~_0 = Gamma(gamma+1)^{-1/2}. Under this sign convention the vector
// (L~_{k-1}(l), ..., L~_0(l)) is an actual eigenvector of the Laguerre freeze
// matrix; the classical (-1)^n-leading-sign normalization is not.
std::vector<double> laguerre_orthonormal_eval(std::size_t n, double gamma, double x);

// k x k Hermite freeze matrix: zero diagonal, offdiag_j = sqrt(k-j)/sqrt(2)
// for j = 1..k-1. Its eigenvalues are the zeros of the kth Hermite polynomial.
TridiagonalSym hermite_freeze_matrix(std::size_t k);

struct LaguerreFreeze {
  TridiagonalSym matrix;     // L_gamma
  Bidiagonal factor;         // B_gamma with L_gamma = B_gamma B_gamma^T
};

// k x k Laguerre freeze matrix L_gamma and its bidiagonal Cholesky-style
// factor B_gamma with diag (sqrt(gamma+k-1), ..., sqrt(gamma)) and subdiag
// (sqrt(k-1), ..., sqrt(1)). Eigenvalues of L_gamma are the zeros of the kth
// Laguerre polynomial of parameter gamma-1.
LaguerreFreeze laguerre_freeze_matrix(std::size_t k, double gamma);

// Zeros of the kth Hermite polynomial, descending, with eigenvectors built
// from the orthonormal polynomial values (H~_{k-1}(h_i), ..., H~_0(h_i)).
FrozenSpectrum hermite_roots(std::size_t k);

// Zeros of the kth Laguerre polynomial of parameter gamma-1, descending, with
// eigenvectors (L~_{k-1}(l_i), ..., L~_0(l_i)) of L_gamma.
FrozenSpectrum laguerre_roots(std::size_t k, double gamma);

// Values of the first k orthonormal polynomials at x, rescaled to a unit
// Euclidean norm vector with positive degree-0 entry. Internally guarded
// against overflow, so safe far outside the oscillatory region.
std::vector<double> hermite_unit_values(std::size_t k, double x);
std::vector<double> laguerre_unit_values(std::size_t k, double gamma, double x);

}  // namespace betafreeze
