#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tfh/radial.hpp"

#include <cmath>

using namespace tfh::radial;

namespace {

GridPtr default_grid() {
  static GridPtr g = RadialGrid::make();
  return g;
}

}  // namespace

TEST_CASE("grid construction: monotone nodes, positive start, exact r_max") {
  const auto g = default_grid();
  CHECK(g->size() == 2048);
  CHECK(g->r()[0] > 0.0);
  CHECK(g->r()[g->size() - 1] == 40.0);
  for (int i = 1; i < g->size(); ++i) CHECK(g->r()[i] > g->r()[i - 1]);
  CHECK(g->bulk_spacing() > 0.015);
  CHECK(g->bulk_spacing() < 0.03);
}

TEST_CASE("integration weights: exp, powers and steep inverse powers") {
  const auto g = default_grid();
  // int_0^40 e^-r = 1 - e^-40
  Eigen::ArrayXd f = (-g->r()).exp();
  CHECK(std::abs(g->integrate(f) - 1.0) < 1e-12);
  // int_0^40 r^2 e^-r = 2 - tail
  f = g->r().square() * (-g->r()).exp();
  CHECK(std::abs(g->integrate(f) - 2.0) < 1e-11);
  // steep: int_{r_i}^{r_max} 1/r^2 dr via the suffix machinery
  f = g->r().pow(-2);
  const auto Q = g->integrate_suffix(f);
  for (int i : {1, 5, 50}) {
    const double want = 1.0 / g->r()[i] - 1.0 / 40.0;
    const double tol = (i == 1) ? 1e-4 : 1e-6;
    CHECK(std::abs(Q[i] - want) < tol * want);
  }
}

TEST_CASE("prefix and suffix agree to quadrature accuracy") {
  // the two integral families use different interpolation coordinates, so
  // they telescope only up to the quadrature error of each
  const auto g = default_grid();
  const Eigen::ArrayXd f = (-0.5 * g->r()).exp() * g->r();
  const double total = g->integrate(f);
  const auto P = g->integrate_prefix(f);
  const auto Q = g->integrate_suffix(f);
  for (int i : {0, 100, 1000, 2047})
    CHECK(std::abs(P[i] + Q[i] - total) < 1e-7 * std::abs(total));
}

TEST_CASE("derivatives reach the design accuracy") {
  const auto g = default_grid();
  const Eigen::ArrayXd f = (-g->r()).exp() * g->r().square();
  const Eigen::ArrayXd d1 = g->derivative(f, 1);
  const Eigen::ArrayXd d2 = g->derivative(f, 2);
  double e1 = 0.0, e2 = 0.0;
  for (int i = 0; i < g->size(); ++i) {
    const double r = g->r()[i], ex = std::exp(-r);
    e1 = std::max(e1, std::abs(d1[i] - (2 * r - r * r) * ex));
    e2 = std::max(e2, std::abs(d2[i] - (2 - 4 * r + r * r) * ex));
  }
  CHECK(e1 < 1e-10);
  CHECK(e2 < 1e-8);
}

TEST_CASE("endpoint fit recovers Taylor data of smooth samples") {
  const auto g = default_grid();
  const auto u = from_function(g, [](double r) { return r * r * std::exp(-r); });
  CHECK(std::abs(u.u0) < 1e-9);
  CHECK(std::abs(u.u1) < 1e-6);
  CHECK(std::abs(u.u2 - 2.0) < 1e-3);
}

TEST_CASE("apply_tl annihilates homogeneous solutions") {
  const auto g = default_grid();
  const double h = g->bulk_spacing();
  // l = 1, u = r^2 -> 0 up to finite-difference round-off (weights ~ 1/h^2)
  auto u = from_function(g, [](double r) { return r * r; }, {0.0, 0.0, 2.0});
  auto tu = apply_tl(1, u);
  CHECK(tu.values.abs().maxCoeff() < 1e-12 * u.norm_inf() / (h * h));
  // l = 3, u = r^4 -> 0
  u = from_function(g, [](double r) { return r * r * r * r; }, {0.0, 0.0, 0.0});
  tu = apply_tl(3, u);
  CHECK(tu.values.abs().maxCoeff() < 1e-12 * u.norm_inf() / (h * h));
}

TEST_CASE("apply_tl flags an under-resolved input") {
  const auto g = default_grid();
  const auto u = from_function(g, [](double r) { return std::sin(60.0 * r); });
  const auto tu = apply_tl(1, u);
  CHECK(tu.accuracy_flag);
  const auto v = from_function(g, [](double r) { return r * r * std::exp(-r); });
  CHECK(!apply_tl(1, v).accuracy_flag);
}

TEST_CASE("T_l^{-1} kernel values (paper formula)") {
  CHECK(tl_inverse_kernel(1, 2.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(tl_inverse_kernel(1, 1.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  // continuity at r = s
  CHECK(tl_inverse_kernel(2, 1.5, 1.5 - 1e-12) ==
        doctest::Approx(tl_inverse_kernel(2, 1.5, 1.5 + 1e-12)).epsilon(1e-9));
}

TEST_CASE("T_l (T_l^{-1} f) = f for smooth decaying f") {
  const auto g = default_grid();
  for (int l : {1, 2}) {
    const auto f = from_function(g, [](double r) { return r * r * std::exp(-r); });
    const auto u = apply_tl_inverse(l, f);
    const auto back = apply_tl(l, u);
    double err = 0.0, scale = f.norm_inf();
    for (int i = 3; i < g->size() - 3; ++i)
      err = std::max(err, std::abs(back.values[i] - f.values[i]));
    CHECK(err / scale < 1e-6);
  }
}

TEST_CASE("inner_plain: frozen analytic values") {
  const auto g = default_grid();
  const auto u = from_function(g, [](double r) { return std::exp(-r); });
  // int e^-2r = 1/2
  CHECK(std::abs(inner_plain(u, u) - 0.5) < 1e-10);
  RadialFunctionR z = u;
  z.values.setZero();
  CHECK(inner_plain(u, z) == 0.0);
}

TEST_CASE("inner_plain conjugate symmetry for complex inputs") {
  const auto g = default_grid();
  RadialFunctionC a, b;
  a.grid = b.grid = g;
  a.values = (-g->r()).exp() * Complex(1.0, 0.5);
  b.values = (-0.7 * g->r()).exp() * g->r() * Complex(0.3, -1.1);
  const Complex ab = inner_plain(a, b);
  const Complex ba = inner_plain(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
}

TEST_CASE("inner_angle: frozen value 3/4 for u = r^2 e^-r at l = 1") {
  // Symbolic oracle (two independent routes, Gamma integrals):
  //   int (u'^2 + 2 u^2/r^2) dr = int u T_1 u dr = 3/4.
  const auto g = default_grid();
  const auto u = from_function(g, [](double r) { return r * r * std::exp(-r); },
                               {0.0, 0.0, 2.0}, DecayClass::Exponential);
  CHECK(std::abs(inner_angle(1, u, u) - 0.75) < 1e-8);
  CHECK(std::abs(inner_plain(u, apply_tl(1, u)) - 0.75) < 1e-8);
  CHECK(inner_angle(1, u, u) >= 0.0);
}

TEST_CASE("inner_angle rejects u(0) != 0") {
  const auto g = default_grid();
  const auto u = from_function(g, [](double r) { return std::exp(-r); });
  CHECK_THROWS_AS((void)inner_angle(1, u, u), std::domain_error);
}

TEST_CASE("grid mismatch raises GridError") {
  const auto g1 = default_grid();
  const auto g2 = RadialGrid::make(1024, 30.0);
  const auto u = from_function(g1, [](double r) { return std::exp(-r); });
  const auto v = from_function(g2, [](double r) { return std::exp(-r); });
  CHECK_THROWS_AS((void)inner_plain(u, v), tfh::GridError);
}

TEST_CASE("Tprod identity on compactly supported smooth pairs") {
  const auto g = default_grid();
  // u = r^2 (1 - r/a)^9 inside [0, a], zero outside
  auto bump = [&](double a, double p) {
    return from_function(
        g,
        [=](double r) {
          if (r >= a) return 0.0;
          return std::pow(r, p) * std::pow(1.0 - r / a, 9.0);
        },
        DecayClass::Compact);
  };
  for (int l : {1, 2}) {
    const auto u = bump(8.0, 2.0);
    const auto v = bump(10.0, 3.0);
    const double lhs = inner_angle(l, u, v);
    const double rhs = inner_plain(u, apply_tl(l, v));
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}
