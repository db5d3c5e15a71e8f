#include "betafreeze/trieig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace betafreeze {

namespace {

constexpr int kMaxQlIterations = 64;

// Implicit-shift QL iteration on (d, e), following the classic Algol tql1/tql2
// procedures of Bowdler, Martin, Reinsch, and Wilkinson and their EISPACK
// translation. d holds the diagonal, e[j] couples rows j and j+1 with
// e[n-1] = 0. When z is non-null the rotations are accumulated into it (z must
// arrive as the identity, or as the Householder accumulation for dense input).
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e[n - 1] = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));

    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations) {
          throw std::runtime_error("eigh_tridiagonal: QL iteration cap exceeded at index " +
                                   std::to_string(l) + " of an order-" + std::to_string(n) +
                                   " matrix (internal defect)");
        }

        // Wilkinson-style implicit shift.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        // Implicit QL sweep from m back to l.
        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t ii = m; ii > l; --ii) {
          const std::size_t i = ii - 1;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              h = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * h;
              (*z)(k, i) = c * (*z)(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

// Householder reduction of a symmetric matrix held in v to tridiagonal form
// (d, e), accumulating the orthogonal transform in v. EISPACK tred2.
void householder_tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);

  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double fval = d[i - 1];
      double g = std::sqrt(h);
      if (fval > 0.0) g = -g;
      e[i] = scale * g;
      h -= fval * g;
      d[i - 1] = fval - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        fval = d[j];
        v(j, i) = fval;
        g = e[j] + v(j, j) * fval;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * fval;
        }
        e[j] = g;
      }
      fval = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        fval += e[j] * d[j];
      }
      const double hh = fval / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        fval = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= fval * e[k] + g * d[k];
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate the transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Sorts values descending (stably, by index on ties), permutes vector columns
// to match, and makes each column's first nonzero entry positive.
EigenResult finalize(std::vector<double> d, Matrix* z) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&d](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  EigenResult result;
  result.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.values[i] = d[order[i]];

  if (z) {
    Matrix vecs(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = order[j];
      double sign = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = (*z)(i, src);
        if (std::abs(v) > 1e-10) {
          sign = v > 0.0 ? 1.0 : -1.0;
          break;
        }
      }
      for (std::size_t i = 0; i < n; ++i) vecs(i, j) = sign * (*z)(i, src);
    }
    result.vectors = std::move(vecs);
  }
  return result;
}

}  // namespace

EigenResult eigh_tridiagonal(const TridiagonalSym& t, bool want_vectors) {
  if (!t.well_formed()) throw std::invalid_argument("eigh_tridiagonal: malformed matrix");
  const std::size_t n = t.size();

  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());

  if (want_vectors) {
    Matrix z = Matrix::identity(n);
    ql_implicit(d, e, &z);
    return finalize(std::move(d), &z);
  }
  ql_implicit(d, e, nullptr);
  return finalize(std::move(d), nullptr);
}

EigenResult eigh_symmetric(const Matrix& a, bool want_vectors) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) throw std::invalid_argument("eigh_symmetric: matrix must be square");
  const double scale = a.max_abs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("eigh_symmetric: matrix is not symmetric");

  Matrix v = a;
  std::vector<double> d;
  std::vector<double> e;
  householder_tridiagonalize(v, d, e);

  // tred2 leaves e[i] coupling rows i-1 and i; shift to the (i, i+1) layout.
  std::vector<double> e_shift(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) e_shift[i - 1] = e[i];

  ql_implicit(d, e_shift, &v);
  EigenResult result = finalize(std::move(d), &v);
  if (!want_vectors) result.vectors.reset();
  return result;
}

double eig_residual(const TridiagonalSym& t, double value, std::span<const double> vector) {
  if (vector.size() != t.size()) throw std::invalid_argument("eig_residual: size mismatch");
  const double vnorm = norm2(vector);
  if (vnorm == 0.0) throw std::invalid_argument("eig_residual: zero vector");
  std::vector<double> tv = t.apply(vector);
  double s = 0.0;
  for (std::size_t i = 0; i < tv.size(); ++i) {
    const double r = tv[i] - value * vector[i];
    s += r * r;
  }
  return std::sqrt(s) / vnorm;
}

}  // namespace betafreeze
