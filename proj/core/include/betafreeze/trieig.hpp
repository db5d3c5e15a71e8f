#pragma once

#include <optional>
#include <span>

#include "betafreeze/matrix.hpp"

namespace betafreeze {

// Eigen-decomposition result. Values are sorted in descending order; vectors,
// when requested, hold the matching unit eigenvectors as columns, each with
// its first nonzero entry made positive.
struct EigenResult {
  std::vector<double> values;
  std::optional<Matrix> vectors;
};

// Symmetric tridiagonal eigensolver, implicit-shift QL iteration. Values-only
// mode skips the rotation accumulation and is the Monte Carlo hot path.
EigenResult eigh_tridiagonal(const TridiagonalSym& t, bool want_vectors);

// Dense symmetric input: Householder reduction to tridiagonal form feeding the
// same QL iteration. Needed by the first-order perturbation predictor.
EigenResult eigh_symmetric(const Matrix& a, bool want_vectors);

// ||T v - value v||_2 / ||v||_2.
double eig_residual(const TridiagonalSym& t, double value, std::span<const double> vector);

}  // namespace betafreeze
