#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tfh/sphere.hpp"

#include <cmath>
#include <complex>

using namespace tfh::sphere;
using tfh::sphere::Complex;

namespace {

/// Independent quadrature oracle: integrate a scalar over S^2 with a rule of
/// the given order.
template <class F>
Complex sphere_integral(int order, F&& f) {
  const auto quad = AngularQuadrature::gauss(order);
  Complex acc = 0.0;
  for (std::size_t a = 0; a < quad.nodes.size(); ++a)
    acc += quad.weights[static_cast<Eigen::Index>(a)] * f(quad.nodes[a]);
  return acc;
}

}  // namespace

TEST_CASE("quadrature weights are positive and sum to 4 pi") {
  for (int order : {0, 1, 4, 8, 16}) {
    const auto quad = AngularQuadrature::gauss(order);
    CHECK(quad.weights.minCoeff() > 0.0);
    CHECK(std::abs(quad.weights.sum() - 4.0 * M_PI) < 1e-12);
  }
}

TEST_CASE("Y_00 is the constant harmonic") {
  const Complex v = eval_ylm({0, 0}, {0.83, 2.1});
  CHECK(std::abs(v - Complex(1.0 / std::sqrt(4.0 * M_PI), 0.0)) < 1e-15);
}

TEST_CASE("Y_10 at the polar axis") {
  const Complex v = eval_ylm({1, 0}, {0.0, 0.0});
  CHECK(std::abs(v - Complex(std::sqrt(3.0 / (4.0 * M_PI)), 0.0)) < 1e-15);
}

TEST_CASE("|Y_22|^2 integrates to one (quadrature oracle at order >= 2l+1)") {
  const Complex v =
      sphere_integral(5, [](const AngularPoint& p) { return std::norm(eval_ylm({2, 2}, p)); });
  CHECK(std::abs(v - 1.0) < 1e-10);
}

TEST_CASE("low-degree harmonics match closed forms (Condon-Shortley phase)") {
  const AngularPoint p{1.234, 0.77};
  const double st = std::sin(p.psi), ct = std::cos(p.psi);
  // Y_11 = -sqrt(3/8pi) sin(theta) e^{i phi}
  const Complex y11 = eval_ylm({1, 1}, p);
  const Complex want11 =
      -std::sqrt(3.0 / (8.0 * M_PI)) * st * std::polar(1.0, p.phi);
  CHECK(std::abs(y11 - want11) < 1e-14);
  // Y_2-1 = +sqrt(15/8pi) sin cos e^{-i phi}
  const Complex y2m1 = eval_ylm({2, -1}, p);
  const Complex want2m1 =
      std::sqrt(15.0 / (8.0 * M_PI)) * st * ct * std::polar(1.0, -p.phi);
  CHECK(std::abs(y2m1 - want2m1) < 1e-14);
}

TEST_CASE("index errors") {
  CHECK_THROWS_AS((void)eval_ylm({1, 2}, {0.3, 0.3}), std::out_of_range);
  CHECK_THROWS_AS((void)eval_vsh(VshKind::Psi, {0, 0}, {0.3, 0.3}), std::out_of_range);
  CHECK_THROWS_AS((void)eval_vsh(VshKind::Phi, {0, 0}, {0.3, 0.3}), std::out_of_range);
}

TEST_CASE("Upsilon_00 is the radial unit vector over sqrt(4 pi)") {
  const AngularPoint p{0.9, 5.1};
  const Eigen::Vector3cd v = eval_vsh(VshKind::Upsilon, {0, 0}, p);
  const Eigen::Vector3d want = unit_radial(p) / std::sqrt(4.0 * M_PI);
  CHECK((v - want.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Psi and Phi are pointwise tangential, |Upsilon| = |Y|") {
  for (const AngularPoint p : {AngularPoint{0.4, 1.0}, AngularPoint{2.3, 4.4}}) {
    const Eigen::Vector3cd rhat = unit_radial(p).cast<Complex>();
    for (int l = 1; l <= 5; ++l) {
      for (int m = -l; m <= l; ++m) {
        CHECK(std::abs(eval_vsh(VshKind::Psi, {l, m}, p).dot(rhat)) < 1e-13);
        CHECK(std::abs(eval_vsh(VshKind::Phi, {l, m}, p).dot(rhat)) < 1e-13);
        CHECK(std::abs(eval_vsh(VshKind::Upsilon, {l, m}, p).norm() -
                       std::abs(eval_ylm({l, m}, p))) < 1e-13);
      }
    }
  }
}

TEST_CASE("VSH are finite at the poles") {
  for (double psi : {0.0, M_PI}) {
    for (int l = 1; l <= 3; ++l) {
      for (int m = -l; m <= l; ++m) {
        const auto v = eval_vsh(VshKind::Psi, {l, m}, {psi, 0.3});
        CHECK(std::isfinite(v.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("<Psi_11, Phi_11> = 0 over the sphere") {
  const auto quad = AngularQuadrature::gauss(3);
  Complex acc = 0.0;
  for (std::size_t a = 0; a < quad.nodes.size(); ++a) {
    const auto psi = eval_vsh(VshKind::Psi, {1, 1}, quad.nodes[a]);
    const auto phi = eval_vsh(VshKind::Phi, {1, 1}, quad.nodes[a]);
    acc += quad.weights[static_cast<Eigen::Index>(a)] * psi.dot(phi);
  }
  CHECK(std::abs(acc) < 1e-10);
}

TEST_CASE("vsh_gram: 7x7 identity at l_max = 1 (m >= 0), [1] at l_max = 0") {
  const auto quad = AngularQuadrature::gauss(2);
  const Eigen::MatrixXcd g7 = vsh_gram(1, quad, /*include_negative_m=*/false);
  CHECK(g7.rows() == 7);
  CHECK((g7 - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-10);

  const Eigen::MatrixXcd g1 = vsh_gram(0, quad);
  CHECK(g1.rows() == 1);
  CHECK(std::abs(g1(0, 0) - 1.0) < 1e-12);

  // full enumeration at l_max = 1 is 10x10 and also the identity
  const Eigen::MatrixXcd g10 = vsh_gram(1, quad);
  CHECK(g10.rows() == 10);
  CHECK((g10 - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("vsh_gram identity at l_max = 8 (quadrature oracle)") {
  const auto quad = AngularQuadrature::gauss(9);
  const Eigen::MatrixXcd g = vsh_gram(8, quad);
  const int n = static_cast<int>(g.rows());
  CHECK(n == 81 + 2 * 80);
  CHECK((g - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("angular Laplacian action coefficients") {
  // Delta_Omega Phi_2m = 6 Phi_2m
  const auto phi2 = angular_laplacian_action(VshKind::Phi, {2, 1});
  CHECK(phi2[0] == 0.0);
  CHECK(phi2[1] == 0.0);
  CHECK(phi2[2] == doctest::Approx(6.0));
  // Delta_Omega Upsilon_1m = 4 Upsilon - 2 sqrt(2) Psi
  const auto ups1 = angular_laplacian_action(VshKind::Upsilon, {1, 0});
  CHECK(ups1[0] == doctest::Approx(4.0));
  CHECK(ups1[1] == doctest::Approx(-2.0 * std::sqrt(2.0)));
  // mixing matrix is symmetric
  for (int l = 1; l <= 6; ++l) {
    const Eigen::Matrix3d m = angular_mixing_matrix(l);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("finite-difference angular Laplacian matches the mixing coefficients") {
  // FD oracle, independent of angular_laplacian_action.
  const AngularPoint p{1.05, 2.4};
  const double h = 0.02;
  const double c1[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  const double c2[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
  for (VshKind kind : {VshKind::Upsilon, VshKind::Psi, VshKind::Phi}) {
    for (int l = 1; l <= 4; ++l) {
      const SphericalIndex idx{l, 1};
      Eigen::Vector3cd dth = Eigen::Vector3cd::Zero(), dth2 = Eigen::Vector3cd::Zero(),
                       dph2 = Eigen::Vector3cd::Zero();
      for (int k = -3; k <= 3; ++k) {
        dth += c1[k + 3] * eval_vsh(kind, idx, {p.psi + k * h, p.phi});
        dth2 += c2[k + 3] * eval_vsh(kind, idx, {p.psi + k * h, p.phi});
        dph2 += c2[k + 3] * eval_vsh(kind, idx, {p.psi, p.phi + k * h});
      }
      dth /= h;
      dth2 /= (h * h);
      dph2 /= (h * h);
      const double st = std::sin(p.psi), ct = std::cos(p.psi);
      const Eigen::Vector3cd fd = -(dth2 + (ct / st) * dth + dph2 / (st * st));
      const auto coef = angular_laplacian_action(kind, idx);
      const Eigen::Vector3cd want = coef[0] * eval_vsh(VshKind::Upsilon, idx, p) +
                                    coef[1] * eval_vsh(VshKind::Psi, idx, p) +
                                    coef[2] * eval_vsh(VshKind::Phi, idx, p);
      CHECK((fd - want).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("paper-latitude convention maps z = r sin(psi)") {
  const AngularPoint p{0.3, 1.2};
  const Eigen::Vector3d x = unit_radial(p, PolarConvention::PaperLatitude);
  CHECK(x[2] == doctest::Approx(std::sin(0.3)).epsilon(1e-14));
  CHECK(x[0] == doctest::Approx(std::cos(0.3) * std::cos(1.2)).epsilon(1e-12));
}
