#include "tfh/sphere.hpp"

#include "tfh/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace tfh::sphere {

double colatitude(const AngularPoint& p, PolarConvention conv) {
  switch (conv) {
    case PolarConvention::Colatitude:
      return p.psi;
    case PolarConvention::PaperLatitude:
      // z = r sin(psi): colatitude theta with cos(theta) = sin(psi).
      return std::acos(std::sin(p.psi));
  }
  return p.psi;
}

Eigen::Vector3d unit_radial(const AngularPoint& p, PolarConvention conv) {
  const double th = colatitude(p, conv);
  const double st = std::sin(th), ct = std::cos(th);
  return {st * std::cos(p.phi), st * std::sin(p.phi), ct};
}

AngularQuadrature AngularQuadrature::gauss(int order) {
  if (order < 0) throw std::invalid_argument("AngularQuadrature: negative order");
  AngularQuadrature q;
  q.order = order;
  q.n_theta = order + 1;
  q.n_phi = 2 * order + 2;
  Eigen::ArrayXd x, w;
  gauss_legendre(q.n_theta, x, w);
  const double wphi = 2.0 * M_PI / q.n_phi;
  q.nodes.reserve(static_cast<std::size_t>(q.n_theta) * q.n_phi);
  q.weights.resize(static_cast<Eigen::Index>(q.n_theta) * q.n_phi);
  Eigen::Index k = 0;
  for (int i = 0; i < q.n_theta; ++i) {
    const double theta = std::acos(x[i]);
    for (int j = 0; j < q.n_phi; ++j, ++k) {
      q.nodes.push_back({theta, wphi * j});
      q.weights[k] = w[i] * wphi;
    }
  }
  return q;
}

LegendreTable LegendreTable::build(int l_max, double theta) {
  LegendreTable t;
  t.l_max = l_max;
  const int n = l_max + 1;
  t.S = Eigen::ArrayXXd::Zero(n, n);
  t.dS = Eigen::ArrayXXd::Zero(n, n);
  t.msin = Eigen::ArrayXXd::Zero(n, n);
  const double ct = std::cos(theta), st = std::sin(theta);

  // Fully normalised recurrence, Condon-Shortley phase folded in.
  t.S(0, 0) = 1.0 / std::sqrt(4.0 * M_PI);
  for (int m = 1; m <= l_max; ++m)
    t.S(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * t.S(m - 1, m - 1);
  for (int m = 0; m < l_max; ++m)
    t.S(m + 1, m) = std::sqrt(2.0 * m + 3.0) * ct * t.S(m, m);
  for (int m = 0; m <= l_max; ++m) {
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b =
          std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * double(l - 1) * (l - 1) - 1.0));
      t.S(l, m) = a * (ct * t.S(l - 1, m) - b * t.S(l - 2, m));
    }
  }

  auto s_signed = [&](int l, int m) -> double {
    if (l < 0 || std::abs(m) > l) return 0.0;
    const int am = std::abs(m);
    const double v = t.S(l, am);
    return (m >= 0 || am % 2 == 0) ? v : -v;
  };

  // d/dtheta via the ladder identity; m/sin(theta) via the degree-(l-1)
  // ladder.  Both are finite at the poles.
  for (int l = 0; l <= l_max; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double cp = std::sqrt(double(l - m) * (l + m + 1));
      const double cm = std::sqrt(double(l + m) * (l - m + 1));
      t.dS(l, m) = 0.5 * (cp * s_signed(l, m + 1) - cm * s_signed(l, m - 1));
      if (l >= 1) {
        const double dp = std::sqrt(double(l - m) * (l - m - 1));
        const double dm = std::sqrt(double(l + m) * (l + m - 1));
        const double f = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0));
        t.msin(l, m) =
            -0.5 * f * (dm * s_signed(l - 1, m - 1) + dp * s_signed(l - 1, m + 1));
      }
    }
  }
  return t;
}

double LegendreTable::s(int l, int m) const {
  const int am = std::abs(m);
  const double v = S(l, am);
  return (m >= 0 || am % 2 == 0) ? v : -v;
}

double LegendreTable::ds(int l, int m) const {
  const int am = std::abs(m);
  const double v = dS(l, am);
  return (m >= 0 || am % 2 == 0) ? v : -v;
}

double LegendreTable::m_over_sin(int l, int m) const {
  const int am = std::abs(m);
  double v = msin(l, am);
  if (m < 0) v = (am % 2 == 0) ? -v : v;  // (-m) * S(l,-m)/sin = -(-1)^m * msin
  return v;
}

namespace {

void check_index(const SphericalIndex& idx) {
  if (!idx.valid()) throw std::out_of_range("sphere: invalid (l, m) index");
}

}  // namespace

Complex eval_ylm(const SphericalIndex& idx, const AngularPoint& p, PolarConvention conv) {
  check_index(idx);
  const double theta = colatitude(p, conv);
  const LegendreTable t = LegendreTable::build(idx.l, theta);
  return t.s(idx.l, idx.m) * std::polar(1.0, idx.m * p.phi);
}

Eigen::Vector3cd eval_vsh(VshKind kind, const SphericalIndex& idx, const AngularPoint& p,
                          PolarConvention conv) {
  check_index(idx);
  if (kind != VshKind::Upsilon && idx.l < 1)
    throw std::out_of_range("sphere: Psi/Phi require l >= 1");
  const double theta = colatitude(p, conv);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  const Eigen::Vector3d rhat(st * cp, st * sp, ct);
  const Eigen::Vector3d that(ct * cp, ct * sp, -st);
  const Eigen::Vector3d phat(-sp, cp, 0.0);

  const LegendreTable t = LegendreTable::build(idx.l, theta);
  const Complex e = std::polar(1.0, idx.m * p.phi);
  switch (kind) {
    case VshKind::Upsilon:
      return (t.s(idx.l, idx.m) * e) * rhat;
    case VshKind::Psi: {
      const double inv = 1.0 / l_tilde(idx.l);
      return inv * (t.ds(idx.l, idx.m) * e * that.cast<Complex>() +
                    Complex(0, 1) * t.m_over_sin(idx.l, idx.m) * e * phat.cast<Complex>());
    }
    case VshKind::Phi: {
      const double inv = 1.0 / l_tilde(idx.l);
      return inv * (t.ds(idx.l, idx.m) * e * phat.cast<Complex>() -
                    Complex(0, 1) * t.m_over_sin(idx.l, idx.m) * e * that.cast<Complex>());
    }
  }
  return Eigen::Vector3cd::Zero();
}

std::array<double, 3> angular_laplacian_action(VshKind kind, const SphericalIndex& idx) {
  check_index(idx);
  const double lt = l_tilde(idx.l);
  switch (kind) {
    case VshKind::Upsilon:
      return {2.0 + lt * lt, -2.0 * lt, 0.0};
    case VshKind::Psi:
      if (idx.l < 1) throw std::out_of_range("sphere: Psi requires l >= 1");
      return {-2.0 * lt, lt * lt, 0.0};
    case VshKind::Phi:
      if (idx.l < 1) throw std::out_of_range("sphere: Phi requires l >= 1");
      return {0.0, 0.0, lt * lt};
  }
  return {0.0, 0.0, 0.0};
}

Eigen::Matrix3d angular_mixing_matrix(int l) {
  const double lt = l_tilde(l);
  Eigen::Matrix3d m;
  m << 2.0 + lt * lt, -2.0 * lt, 0.0,
       -2.0 * lt, lt * lt, 0.0,
       0.0, 0.0, lt * lt;
  return m;
}

std::vector<std::pair<VshKind, SphericalIndex>> vsh_basis(int l_max, bool include_negative_m) {
  std::vector<std::pair<VshKind, SphericalIndex>> basis;
  for (VshKind kind : {VshKind::Upsilon, VshKind::Psi, VshKind::Phi}) {
    const int l0 = (kind == VshKind::Upsilon) ? 0 : 1;
    for (int l = l0; l <= l_max; ++l)
      for (int m = include_negative_m ? -l : 0; m <= l; ++m)
        basis.push_back({kind, {l, m}});
  }
  return basis;
}

Eigen::MatrixXcd vsh_gram(int l_max, const AngularQuadrature& quad, bool include_negative_m) {
  const auto basis = vsh_basis(l_max, include_negative_m);
  const int nb = static_cast<int>(basis.size());
  const int nq = static_cast<int>(quad.nodes.size());

  // Tabulate every basis vector at every node, then accumulate the Gram.
  Eigen::MatrixXcd vals(3 * nq, nb);
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < nq; ++a)
      vals.block<3, 1>(3 * a, b) = eval_vsh(basis[b].first, basis[b].second, quad.nodes[a]);

  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(nb, nb);
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j) {
      Complex acc = 0.0;
      for (int a = 0; a < nq; ++a)
        acc += quad.weights[a] * vals.block<3, 1>(3 * a, i).dot(vals.block<3, 1>(3 * a, j));
      gram(i, j) = acc;
      gram(j, i) = std::conj(acc);
    }
  }
  return gram;
}

}  // namespace tfh::sphere
