#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tfh/numeric.hpp"

#include <cmath>

using namespace tfh;

TEST_CASE("fd_weights reproduce derivatives of polynomials exactly") {
  Eigen::ArrayXd x(7);
  x << 0.0, 0.1, 0.25, 0.43, 0.71, 0.9, 1.2;  // deliberately non-uniform
  const double z = 0.43;
  const Eigen::MatrixXd w = fd_weights(x, z, 2);
  // f = 3 x^4 - 2 x^2 + x
  auto f = [](double t) { return 3 * t * t * t * t - 2 * t * t + t; };
  auto f1 = [](double t) { return 12 * t * t * t - 4 * t + 1; };
  auto f2 = [](double t) { return 36 * t * t - 4; };
  double d0 = 0, d1 = 0, d2 = 0;
  for (int j = 0; j < 7; ++j) {
    d0 += w(0, j) * f(x[j]);
    d1 += w(1, j) * f(x[j]);
    d2 += w(2, j) * f(x[j]);
  }
  CHECK(d0 == doctest::Approx(f(z)).epsilon(1e-12));
  CHECK(d1 == doctest::Approx(f1(z)).epsilon(1e-11));
  CHECK(d2 == doctest::Approx(f2(z)).epsilon(1e-10));
}

TEST_CASE("gauss_legendre integrates high-degree polynomials") {
  Eigen::ArrayXd x, w;
  gauss_legendre(9, x, w);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  // degree 17 is exact for 9 nodes
  double acc = 0.0;
  for (int i = 0; i < 9; ++i) acc += w[i] * std::pow(x[i], 16);
  CHECK(acc == doctest::Approx(2.0 / 17.0).epsilon(1e-13));
}

TEST_CASE("neville extrapolation recovers the limit of a polynomial sequence") {
  std::vector<double> xs, ys;
  for (int k = 0; k < 6; ++k) {
    const double h = 0.4 * std::pow(0.5, k);
    xs.push_back(h);
    ys.push_back(3.7 + 1.1 * h - 0.3 * h * h);
  }
  std::vector<double> diag;
  const double v = neville_to_zero(xs, ys, &diag);
  CHECK(v == doctest::Approx(3.7).epsilon(1e-12));
  CHECK(diag.size() == 6);
}

TEST_CASE("splitmix64 is deterministic") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  SplitMix64 c(7);
  const double u = c.uniform(-1.0, 1.0);
  CHECK(u >= -1.0);
  CHECK(u < 1.0);
}

TEST_CASE("format_float carries 17 significant digits") {
  CHECK(format_float(0.1) == "1.0000000000000001e-01");
  CHECK(format_float(-2.0) == "-2.0000000000000000e+00");
}
