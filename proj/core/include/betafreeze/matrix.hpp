#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace betafreeze {

// Dense row-major matrix of doubles. Only the handful of operations the
// library needs; this is not a general linear algebra type.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> col(std::size_t j) const;

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double max_abs() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Symmetric tridiagonal matrix stored as bands; offdiag[j] couples rows j and
// j+1.
struct TridiagonalSym {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
  bool well_formed() const;
  double norm_inf() const;
  std::vector<double> apply(std::span<const double> x) const;
  TridiagonalSym scaled(double factor) const;
  Matrix dense() const;
};

// Lower bidiagonal matrix; subdiag[j] sits at (j+1, j).
struct Bidiagonal {
  std::vector<double> diag;
  std::vector<double> subdiag;

  std::size_t size() const { return diag.size(); }
  bool well_formed() const;
  // B * B^T, which is symmetric tridiagonal.
  TridiagonalSym gram() const;
};

double norm2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

}  // namespace betafreeze
