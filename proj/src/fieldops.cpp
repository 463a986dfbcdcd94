#include "tfh/fieldops.hpp"

#include "tfh/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tfh::fieldops {

namespace {

using sphere::AngularQuadrature;
using sphere::LegendreTable;
using sphere::SphericalIndex;
using sphere::VshKind;

int lm_index(int l, int m) { return l * l + l + m; }

/// Scalar harmonics and their angular derivatives tabulated at quadrature
/// nodes: Y, dY = d/dtheta Y, and mY with (1/sin) dY/dphi = i * mY.
struct ScalarTable {
  int l_max;
  Eigen::MatrixXcd Y, dY, mY;  // n_nodes x (l_max+1)^2

  ScalarTable(int L, const AngularQuadrature& quad) : l_max(L) {
    const int nn = static_cast<int>(quad.nodes.size());
    const int nc = (L + 1) * (L + 1);
    Y.resize(nn, nc);
    dY.resize(nn, nc);
    mY.resize(nn, nc);
    for (int a = 0; a < nn; ++a) {
      const LegendreTable t = LegendreTable::build(L, quad.nodes[a].psi);
      for (int l = 0; l <= L; ++l) {
        for (int m = -l; m <= l; ++m) {
          const Complex e = std::polar(1.0, m * quad.nodes[a].phi);
          const int c = lm_index(l, m);
          Y(a, c) = t.s(l, m) * e;
          dY(a, c) = t.ds(l, m) * e;
          mY(a, c) = t.m_over_sin(l, m) * e;
        }
      }
    }
  }
};

/// VSH values tabulated at quadrature nodes for channels l <= l_max.
struct VshTable {
  int l_max;
  // per node a and channel c (l >= 1): Cartesian 3-vectors
  std::vector<Eigen::Matrix3Xcd> ups, psi, phi;  // [a](3, nchannels)

  VshTable(int L, const AngularQuadrature& quad) : l_max(L) {
    const int nn = static_cast<int>(quad.nodes.size());
    const int nc = TransverseField::channel_count(L);
    ups.assign(nn, Eigen::Matrix3Xcd(3, nc));
    psi.assign(nn, Eigen::Matrix3Xcd(3, nc));
    phi.assign(nn, Eigen::Matrix3Xcd(3, nc));
    for (int a = 0; a < nn; ++a) {
      for (int l = 1; l <= L; ++l) {
        for (int m = -l; m <= l; ++m) {
          const int c = TransverseField::channel_index(l, m);
          const SphericalIndex idx{l, m};
          ups[a].col(c) = sphere::eval_vsh(VshKind::Upsilon, idx, quad.nodes[a]);
          psi[a].col(c) = sphere::eval_vsh(VshKind::Psi, idx, quad.nodes[a]);
          phi[a].col(c) = sphere::eval_vsh(VshKind::Phi, idx, quad.nodes[a]);
        }
      }
    }
  }
};

}  // namespace

TransverseField TransverseField::zero(GridPtr grid, int l_max) {
  TransverseField tf;
  tf.grid = grid;
  tf.l_max = l_max;
  const int nc = channel_count(l_max);
  RadialFunctionC z;
  z.grid = grid;
  z.values = Eigen::ArrayXcd::Zero(grid->size());
  tf.u.assign(nc, z);
  tf.w.assign(nc, z);
  return tf;
}

LongitudinalField LongitudinalField::zero(GridPtr grid, int l_max) {
  LongitudinalField lf;
  lf.grid = grid;
  lf.l_max = l_max;
  RadialFunctionC z;
  z.grid = grid;
  z.values = Eigen::ArrayXcd::Zero(grid->size());
  lf.v.assign(channel_count(l_max), z);
  return lf;
}

SampledVectorField reconstruct(const TransverseField& tf, const AngularQuadrature& quad) {
  const radial::RadialGrid& g = *tf.grid;
  const int nr = g.size();
  const int nn = static_cast<int>(quad.nodes.size());
  const int nc = TransverseField::channel_count(tf.l_max);
  const VshTable vt(tf.l_max, quad);

  SampledVectorField out;
  out.grid = tf.grid;
  out.quad = quad;
  out.values = Eigen::MatrixX3cd::Zero(static_cast<Eigen::Index>(nr) * nn, 3);

  // Radial channel factors.
  Eigen::MatrixXcd fu(nr, nc), fdu(nr, nc), fw(nr, nc);
  bool singular = false;
  for (int l = 1; l <= tf.l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int c = TransverseField::channel_index(l, m);
      const RadialFunctionC& u = tf.u[c];
      const RadialFunctionC& w = tf.w[c];
      radial::check_same_grid(u.grid, tf.grid);
      radial::check_same_grid(w.grid, tf.grid);
      const double lt = sphere::l_tilde(l);
      const auto du = g.derivative(u.values, 1);
      fu.col(c) = (lt * u.values / g.r().square()).matrix();
      fdu.col(c) = (du / g.r()).matrix();
      fw.col(c) = (w.values / g.r()).matrix();
      if (std::abs(u.u1) > 1e-8 * (u.norm_inf() + 1e-300)) singular = true;
    }
  }
  out.singular = singular;

  for (int ir = 0; ir < nr; ++ir) {
    for (int a = 0; a < nn; ++a) {
      Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
      for (int c = 0; c < nc; ++c)
        acc += fu(ir, c) * vt.ups[a].col(c) + fdu(ir, c) * vt.psi[a].col(c) +
               fw(ir, c) * vt.phi[a].col(c);
      out.values.row(out.index(ir, a)) = acc.transpose();
    }
  }
  return out;
}

TransverseField decompose(const SampledVectorField& f, int l_max, bool require_transverse,
                          double divergence_tolerance) {
  if (require_transverse) {
    const double resid = divergence_residual(f);
    if (resid > divergence_tolerance)
      throw TransversalityError("decompose: divergence residual " + std::to_string(resid) +
                                " exceeds tolerance; project first");
  }
  const radial::RadialGrid& g = *f.grid;
  const int nr = g.size();
  const int nn = f.n_ang();
  const int nc = TransverseField::channel_count(l_max);
  const VshTable vt(l_max, f.quad);

  TransverseField tf = TransverseField::zero(f.grid, l_max);
  tf.l_max = l_max;

  // Angular projections per radial shell.
  Eigen::MatrixXcd aU(nr, nc), aP(nr, nc), aF(nr, nc);
  for (int ir = 0; ir < nr; ++ir) {
    Eigen::Matrix3Xcd shell(3, nn);
    for (int a = 0; a < nn; ++a) shell.col(a) = f.values.row(f.index(ir, a)).transpose();
    for (int c = 0; c < nc; ++c) {
      Complex su = 0.0, sp = 0.0, sf = 0.0;
      for (int a = 0; a < nn; ++a) {
        const double w = f.quad.weights[a];
        su += w * vt.ups[a].col(c).dot(shell.col(a));
        sp += w * vt.psi[a].col(c).dot(shell.col(a));
        sf += w * vt.phi[a].col(c).dot(shell.col(a));
      }
      aU(ir, c) = su;
      aP(ir, c) = sp;
      aF(ir, c) = sf;
    }
  }

  for (int l = 1; l <= l_max; ++l) {
    const double lt = sphere::l_tilde(l);
    for (int m = -l; m <= l; ++m) {
      const int c = TransverseField::channel_index(l, m);
      // w_lm(r) = r * (Phi-projection)
      tf.w[c].values = g.r() * aF.col(c).array();
      const auto wend = radial::fit_endpoint<Complex>(g, tf.w[c].values);
      tf.w[c].u0 = wend[0];
      tf.w[c].u1 = wend[1];
      tf.w[c].u2 = wend[2];

      // u_lm(r) = [ r^-l int_0^r s^{l+1} (lt aU + (l+1) aP)
      //           + r^{l+1} int_r^inf s^-l (lt aU - l aP) ] / (2l+1)
      Eigen::ArrayXcd low(nr), high(nr);
      for (int ir = 0; ir < nr; ++ir) {
        const double s = g.r()[ir];
        low[ir] = std::pow(s, l + 1) * (lt * aU(ir, c) + double(l + 1) * aP(ir, c));
        high[ir] = std::pow(s, -l) * (lt * aU(ir, c) - double(l) * aP(ir, c));
      }
      const auto P = g.integrate_prefix(low);
      const auto Q = g.integrate_suffix(high);
      for (int ir = 0; ir < nr; ++ir) {
        const double s = g.r()[ir];
        tf.u[c].values[ir] =
            (std::pow(s, -l) * P[ir] + std::pow(s, l + 1) * Q[ir]) / (2.0 * l + 1.0);
      }
      const auto uend = radial::fit_endpoint<Complex>(g, tf.u[c].values);
      tf.u[c].u0 = uend[0];
      tf.u[c].u1 = uend[1];
      tf.u[c].u2 = uend[2];
    }
  }
  return tf;
}

GradientDensities gradient_densities(const SampledVectorField& f) {
  const radial::RadialGrid& g = *f.grid;
  const int nr = g.size();
  const int nn = f.n_ang();
  const int L = f.quad.order;
  const int nc = (L + 1) * (L + 1);
  const ScalarTable st(L, f.quad);

  GradientDensities out;
  out.energy = Eigen::ArrayXd::Zero(nr);
  out.div_sq = Eigen::ArrayXd::Zero(nr);

  // d/dr of every Cartesian component along rays.
  Eigen::MatrixX3cd dr(f.values.rows(), 3);
  Eigen::ArrayXcd ray(nr);
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < nn; ++a) {
      for (int ir = 0; ir < nr; ++ir) ray[ir] = f.values(f.index(ir, a), j);
      const auto d = g.derivative(ray, 1);
      for (int ir = 0; ir < nr; ++ir) dr(f.index(ir, a), j) = d[ir];
    }
  }

  // Angular derivatives per shell by exact analysis/synthesis.
  Eigen::MatrixXcd coef(nc, 3);
  Eigen::Matrix3Xcd dth(3, nn), dph(3, nn);
  for (int ir = 0; ir < nr; ++ir) {
    const double r = g.r()[ir];
    for (int j = 0; j < 3; ++j) {
      for (int c = 0; c < nc; ++c) {
        Complex acc = 0.0;
        for (int a = 0; a < nn; ++a)
          acc += f.quad.weights[a] * std::conj(st.Y(a, c)) * f.values(f.index(ir, a), j);
        coef(c, j) = acc;
      }
    }
    dth.setZero();
    dph.setZero();
    for (int j = 0; j < 3; ++j) {
      for (int a = 0; a < nn; ++a) {
        Complex t = 0.0, p = 0.0;
        for (int c = 0; c < nc; ++c) {
          t += coef(c, j) * st.dY(a, c);
          p += coef(c, j) * st.mY(a, c);
        }
        dth(j, a) = t;
        dph(j, a) = Complex(0, 1) * p;  // (1/sin)dY/dphi = i * mY
      }
    }

    double e = 0.0, d2 = 0.0;
    for (int a = 0; a < nn; ++a) {
      const double th = f.quad.nodes[a].psi, ph = f.quad.nodes[a].phi;
      const double stn = std::sin(th), ctn = std::cos(th);
      const Eigen::Vector3d rhat(stn * std::cos(ph), stn * std::sin(ph), ctn);
      const Eigen::Vector3d that(ctn * std::cos(ph), ctn * std::sin(ph), -stn);
      const Eigen::Vector3d phat(-std::sin(ph), std::cos(ph), 0.0);
      Complex div = 0.0;
      double esum = 0.0;
      for (int j = 0; j < 3; ++j) {
        const Complex gr = dr(f.index(ir, a), j);
        const Complex gt = dth(j, a) / r;
        const Complex gp = dph(j, a) / r;
        esum += std::norm(gr) + std::norm(gt) + std::norm(gp);
        div += rhat[j] * gr + that[j] * gt + phat[j] * gp;
      }
      e += f.quad.weights[a] * esum;
      d2 += f.quad.weights[a] * std::norm(div);
    }
    out.energy[ir] = r * r * e;
    out.div_sq[ir] = r * r * d2;
  }
  return out;
}

double divergence_residual(const SampledVectorField& f) {
  const GradientDensities d = gradient_densities(f);
  const int n = static_cast<int>(d.energy.size());
  Eigen::ArrayXd num = d.div_sq, den = d.energy;
  for (int i = 0; i < 3; ++i) num[i] = den[i] = 0.0;
  for (int i = n - 3; i < n; ++i) num[i] = den[i] = 0.0;
  const double e = f.grid->integrate(den);
  if (e <= 1e-300) return 0.0;
  return std::sqrt(f.grid->integrate(num) / e);
}

SampledVectorField project_transverse(const SampledVectorField& f, int l_max) {
  const TransverseField tf = decompose(f, l_max, /*require_transverse=*/false);
  SampledVectorField out = reconstruct(tf, f.quad);
  out.singular = f.singular;
  return out;
}

SampledVectorField sample_longitudinal(const LongitudinalField& lf,
                                       const AngularQuadrature& quad) {
  const radial::RadialGrid& g = *lf.grid;
  const int nr = g.size();
  const int nn = static_cast<int>(quad.nodes.size());

  SampledVectorField out;
  out.grid = lf.grid;
  out.quad = quad;
  out.values = Eigen::MatrixX3cd::Zero(static_cast<Eigen::Index>(nr) * nn, 3);

  for (int l = 0; l <= lf.l_max; ++l) {
    const double lt = sphere::l_tilde(l);
    for (int m = -l; m <= l; ++m) {
      const RadialFunctionC& v = lf.v[LongitudinalField::channel_index(l, m)];
      radial::check_same_grid(v.grid, lf.grid);
      const auto dv = g.derivative(v.values, 1);
      for (int a = 0; a < nn; ++a) {
        const Eigen::Vector3cd U = sphere::eval_vsh(VshKind::Upsilon, {l, m}, quad.nodes[a]);
        Eigen::Vector3cd P = Eigen::Vector3cd::Zero();
        if (l >= 1) P = sphere::eval_vsh(VshKind::Psi, {l, m}, quad.nodes[a]);
        for (int ir = 0; ir < nr; ++ir) {
          const Eigen::Vector3cd val =
              dv[ir] * U + (l >= 1 ? (lt * v.values[ir] / g.r()[ir]) * P
                                   : Eigen::Vector3cd::Zero().eval());
          out.values.row(out.index(ir, a)) += val.transpose();
        }
      }
    }
  }
  return out;
}

SampledVectorField make_singular_test_field(GridPtr grid, const AngularQuadrature& quad,
                                            const std::array<Complex, 3>& c,
                                            const RadialFunctionR& profile) {
  TransverseField tf = TransverseField::zero(grid, 1);
  const RadialFunctionC prof = radial::to_complex(profile);
  for (int m = -1; m <= 1; ++m) {
    const int ch = TransverseField::channel_index(1, m);
    tf.u[ch] = prof;
    tf.u[ch].values *= c[m + 1];
    tf.u[ch].u0 *= c[m + 1];
    tf.u[ch].u1 *= c[m + 1];
    tf.u[ch].u2 *= c[m + 1];
  }
  return reconstruct(tf, quad);
}

double surface_mean_sq(const SampledVectorField& f, int ir) {
  const int nn = f.n_ang();
  double acc = 0.0;
  for (int a = 0; a < nn; ++a)
    acc += f.quad.weights[a] * f.values.row(f.index(ir, a)).squaredNorm();
  const double r = f.grid->r()[ir];
  return r * r * acc;
}

void write_field(const std::string& path, const SampledVectorField& f,
                 sphere::PolarConvention conv) {
  double scale = 0.0, imax = 0.0;
  for (Eigen::Index i = 0; i < f.values.rows(); ++i)
    for (int j = 0; j < 3; ++j) {
      scale = std::max(scale, std::abs(f.values(i, j)));
      imax = std::max(imax, std::abs(f.values(i, j).imag()));
    }
  if (imax > 1e-10 * (scale + 1e-300))
    throw std::invalid_argument("write_field: field files store real fields");
  if (conv != sphere::PolarConvention::Colatitude)
    throw std::invalid_argument("write_field: only the colatitude convention is written");

  const std::string tmp = path + ".tmp";
  std::ofstream out(tmp);
  if (!out) throw std::runtime_error("write_field: cannot open " + tmp);
  out << "# r psi phi A1 A2 A3\n";
  for (int ir = 0; ir < f.grid->size(); ++ir) {
    for (int a = 0; a < f.n_ang(); ++a) {
      const auto row = f.values.row(f.index(ir, a));
      out << format_float(f.grid->r()[ir]) << ' ' << format_float(f.quad.nodes[a].psi) << ' '
          << format_float(f.quad.nodes[a].phi) << ' ' << format_float(row(0).real()) << ' '
          << format_float(row(1).real()) << ' ' << format_float(row(2).real()) << '\n';
    }
  }
  out.close();
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("write_field: rename failed for " + path);
}

SampledVectorField read_field(const std::string& path, GridPtr grid,
                              const AngularQuadrature& quad, sphere::PolarConvention conv) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_field: cannot open " + path);

  SampledVectorField f;
  f.grid = grid;
  f.quad = quad;
  const int nr = grid->size();
  const int nn = static_cast<int>(quad.nodes.size());
  f.values.resize(static_cast<Eigen::Index>(nr) * nn, 3);

  std::string line;
  Eigen::Index row = 0;
  const Eigen::Index total = static_cast<Eigen::Index>(nr) * nn;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (row >= total) throw std::runtime_error("read_field: more rows than grid points");
    std::istringstream ss(line);
    double r, psi, phi, a1, a2, a3;
    if (!(ss >> r >> psi >> phi >> a1 >> a2 >> a3))
      throw std::runtime_error("read_field: malformed row");
    const int ir = static_cast<int>(row / nn);
    const int ia = static_cast<int>(row % nn);
    const double th = sphere::colatitude({psi, phi}, conv);
    if (std::abs(r - grid->r()[ir]) > 1e-9 * (1.0 + grid->r()[ir]) ||
        std::abs(th - quad.nodes[ia].psi) > 1e-9 || std::abs(phi - quad.nodes[ia].phi) > 1e-9)
      throw std::runtime_error("read_field: sample points do not match the configured grid");
    f.values(row, 0) = a1;
    f.values(row, 1) = a2;
    f.values(row, 2) = a3;
    ++row;
  }
  if (row != total) throw std::runtime_error("read_field: fewer rows than grid points");
  return f;
}

}  // namespace tfh::fieldops
