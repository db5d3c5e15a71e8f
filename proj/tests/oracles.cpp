#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracles {

namespace {

void gauss_legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

std::vector<double> char_poly_eigs(const std::vector<double>& diag,
                                   const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (offdiag.size() + 1 != n || n == 0 || n > 3)
    throw std::invalid_argument("char_poly_eigs: size must be 1..3");

  std::vector<double> eigs;
  if (n == 1) {
    eigs = {diag[0]};
  } else if (n == 2) {
    const double mean = 0.5 * (diag[0] + diag[1]);
    const double disc = std::sqrt(0.25 * (diag[0] - diag[1]) * (diag[0] - diag[1]) +
                                  offdiag[0] * offdiag[0]);
    eigs = {mean + disc, mean - disc};
  } else {
    // Trigonometric solution of the symmetric 3x3 eigenproblem.
    const double a11 = diag[0], a22 = diag[1], a33 = diag[2];
    const double a12 = offdiag[0], a23 = offdiag[1];
    const double p1 = a12 * a12 + a23 * a23;
    if (p1 == 0.0) {
      eigs = {a11, a22, a33};
    } else {
      const double q = (a11 + a22 + a33) / 3.0;
      const double p2 = (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) +
                        (a33 - q) * (a33 - q) + 2.0 * p1;
      const double p = std::sqrt(p2 / 6.0);
      const double b11 = (a11 - q) / p, b22 = (a22 - q) / p, b33 = (a33 - q) / p;
      const double b12 = a12 / p, b23 = a23 / p;
      const double detb = b11 * (b22 * b33 - b23 * b23) - b12 * (b12 * b33);
      double r = detb / 2.0;
      r = std::clamp(r, -1.0, 1.0);
      const double phi = std::acos(r) / 3.0;
      const double e1 = q + 2.0 * p * std::cos(phi);
      const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
      const double e2 = 3.0 * q - e1 - e3;
      eigs = {e1, e2, e3};
    }
  }
  std::sort(eigs.begin(), eigs.end(), std::greater<double>());
  return eigs;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int points) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre_rule(points, x, w);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < points; ++i) total += w[i] * f(mid + 0.5 * h * x[i]);
  }
  return total * 0.5 * h;
}

double airy_ai(double x) {
  const double c1 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
  const double c2 = std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
  const double x3 = x * x * x;
  double f = 1.0, tf = 1.0;
  double g = x, tg = x;
  for (int k = 0; k < 300; ++k) {
    tf *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    tg *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f += tf;
    g += tg;
    if (std::abs(tf) + std::abs(tg) < 1e-18 * (std::abs(f) + std::abs(g))) break;
  }
  return c1 * f - c2 * g;
}

double airy_first_zero() {
  // Bisection bracket around the first sign change, then secant refinement.
  double lo = -2.5, hi = -2.0;
  double flo = airy_ai(lo);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = airy_ai(mid);
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  double x0 = lo, x1 = hi;
  double f0 = airy_ai(x0), f1 = airy_ai(x1);
  for (int i = 0; i < 50 && std::abs(x1 - x0) > 1e-15; ++i) {
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = airy_ai(x1);
  }
  return x1;
}

double kolmogorov_upper_quantile(double alpha) {
  const auto tail = [](double x) {
    double s = 0.0;
    for (int j = 1; j <= 200; ++j) {
      const double term = std::exp(-2.0 * j * j * x * x);
      s += (j % 2 == 1 ? term : -term);
      if (term < 1e-18) break;
    }
    return 2.0 * s;
  };
  double lo = 0.2, hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tail(mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles
