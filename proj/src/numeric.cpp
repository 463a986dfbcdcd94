#include "tfh/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace tfh {

Eigen::MatrixXd fd_weights(const Eigen::ArrayXd& x, double z, int max_order) {
  const int n = static_cast<int>(x.size());
  if (n < max_order + 1) throw std::invalid_argument("fd_weights: too few nodes");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(max_order + 1, n);
  double c1 = 1.0;
  double c4 = x[0] - z;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(k, i) = c1 * (k * c(k - 1, i - 1) - c5 * c(k, i - 1)) / c2;
        c(0, i) = -c1 * c5 * c(0, i - 1) / c2;
      }
      for (int k = mn; k >= 1; --k)
        c(k, j) = (c4 * c(k, j) - k * c(k - 1, j)) / c3;
      c(0, j) = c4 * c(0, j) / c3;
    }
    c1 = c2;
  }
  return c;
}

void gauss_legendre(int n, Eigen::ArrayXd& nodes, Eigen::ArrayXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  nodes.resize(n);
  weights.resize(n);
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

double neville_to_zero(const std::vector<double>& x, const std::vector<double>& y,
                       std::vector<double>* diagonal) {
  const int n = static_cast<int>(x.size());
  if (n == 0 || y.size() != x.size())
    throw std::invalid_argument("neville_to_zero: bad input sizes");
  std::vector<double> t = y;
  if (diagonal) {
    diagonal->clear();
    diagonal->push_back(t[0]);
  }
  for (int level = 1; level < n; ++level) {
    for (int i = 0; i + level < n; ++i) {
      const double xi = x[i], xj = x[i + level];
      t[i] = (xj * t[i] - xi * t[i + 1]) / (xj - xi);
    }
    if (diagonal) diagonal->push_back(t[0]);
  }
  return t[0];
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return std::string(buf);
}

}  // namespace tfh
