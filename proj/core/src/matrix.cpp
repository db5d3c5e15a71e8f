#include "betafreeze/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace betafreeze {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::col(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool TridiagonalSym::well_formed() const {
  if (diag.empty() || offdiag.size() + 1 != diag.size()) return false;
  for (double v : diag)
    if (!std::isfinite(v)) return false;
  for (double v : offdiag)
    if (!std::isfinite(v)) return false;
  return true;
}

double TridiagonalSym::norm_inf() const {
  const std::size_t n = size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag[i - 1]);
    if (i + 1 < n) row += std::abs(offdiag[i]);
    m = std::max(m, row);
  }
  return m;
}

std::vector<double> TridiagonalSym::apply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw std::invalid_argument("TridiagonalSym::apply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += offdiag[i - 1] * x[i - 1];
    if (i + 1 < n) v += offdiag[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

TridiagonalSym TridiagonalSym::scaled(double factor) const {
  TridiagonalSym t = *this;
  for (double& v : t.diag) v *= factor;
  for (double& v : t.offdiag) v *= factor;
  return t;
}

Matrix TridiagonalSym::dense() const {
  const std::size_t n = size();
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) {
      m(i, i + 1) = offdiag[i];
      m(i + 1, i) = offdiag[i];
    }
  }
  return m;
}

bool Bidiagonal::well_formed() const {
  if (diag.empty() || subdiag.size() + 1 != diag.size()) return false;
  for (double v : diag)
    if (!std::isfinite(v)) return false;
  for (double v : subdiag)
    if (!std::isfinite(v)) return false;
  return true;
}

TridiagonalSym Bidiagonal::gram() const {
  const std::size_t n = size();
  TridiagonalSym t;
  t.diag.resize(n);
  t.offdiag.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * diag[i];
    if (i > 0) v += subdiag[i - 1] * subdiag[i - 1];
    t.diag[i] = v;
    if (i + 1 < n) t.offdiag[i] = diag[i] * subdiag[i];
  }
  return t;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace betafreeze
