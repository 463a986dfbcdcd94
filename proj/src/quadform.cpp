#include "tfh/quadform.hpp"

#include "tfh/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace tfh::quadform {

QuadFormResult form_q(const fieldops::TransverseField& tf) {
  const radial::RadialGrid& g = *tf.grid;
  double acc = 0.0;
  for (int l = 1; l <= tf.l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int c = fieldops::TransverseField::channel_index(l, m);
      const radial::RadialFunctionC& u = tf.u[c];
      const radial::RadialFunctionC& w = tf.w[c];
      if (std::abs(u.u1) > 1e-6 * (u.norm_inf() / g.r_max() + 1e-300))
        throw std::domain_error(
            "form_q: singular u-channel (u'(0) != 0); use form_q_kappa_limit");
      // <u, T_l u>_l = ||T_l u||^2 and (w, T_l w) = <w, w>_l.
      const auto tu = radial::apply_tl(l, u);
      acc += radial::inner_plain(tu, tu).real();
      acc += radial::inner_plain(w, radial::apply_tl(l, w)).real();
    }
  }
  QuadFormResult out;
  out.value = acc;
  return out;
}

double form_q_gradient(const fieldops::SampledVectorField& f) {
  const fieldops::GradientDensities d = fieldops::gradient_densities(f);
  return f.grid->integrate(d.energy);
}

namespace {

std::vector<int> ball_nodes(const radial::RadialGrid& g, const ShrinkingBallOptions& opts) {
  std::vector<int> nodes;
  double target = opts.r0;
  for (int k = 0; k < opts.levels; ++k, target *= 0.5) {
    const int i = g.nearest_node(target);
    if (i < 1) break;
    if (!nodes.empty() && nodes.back() == i) continue;
    nodes.push_back(i);
  }
  return nodes;
}

bool extrapolate(const std::vector<double>& radii, const std::vector<double>& vals, double tol,
                 double& value) {
  std::vector<double> diag;
  value = tfh::neville_to_zero(radii, vals, &diag);
  const int n = static_cast<int>(diag.size());
  if (n < 2) return false;
  const double scale = std::max(1.0, std::abs(value));
  return std::abs(diag[n - 1] - diag[n - 2]) <= tol * scale;
}

}  // namespace

QuadFormResult form_q_kappa_limit(const fieldops::SampledVectorField& f, double kappa,
                                  const ShrinkingBallOptions& opts) {
  const radial::RadialGrid& g = *f.grid;
  const fieldops::GradientDensities d = fieldops::gradient_densities(f);
  const Eigen::ArrayXd prefix = g.integrate_prefix(d.energy);
  const double total = prefix[g.size() - 1];

  QuadFormResult out;
  std::vector<double> radii, vals;
  for (int i : ball_nodes(g, opts)) {
    const double r = g.r()[i];
    const double volume = total - prefix[i];
    const double surf = fieldops::surface_mean_sq(f, i);
    const double F = volume - (5.0 / (3.0 * r) + 44.0 / 27.0 * kappa) * surf;
    radii.push_back(r);
    vals.push_back(F);
    out.extrapolation_table.push_back({r, F});
  }
  out.converged = extrapolate(radii, vals, opts.tol, out.value);
  return out;
}

double surface_limit(const fieldops::SampledVectorField& f, const ShrinkingBallOptions& opts) {
  const radial::RadialGrid& g = *f.grid;
  std::vector<double> radii, vals;
  for (int i : ball_nodes(g, opts)) {
    radii.push_back(g.r()[i]);
    vals.push_back(fieldops::surface_mean_sq(f, i));
  }
  double value = 0.0;
  extrapolate(radii, vals, 1e-6, value);
  return value;
}

double form_q_kappa_spectral(const RadialFunctionR& u, const extension::SpectralFamily& fam) {
  const auto coeffs = extension::forward_transform(u, fam);
  return extension::spectral_form(coeffs, fam);
}

Complex eval_sqrt_kernel(const extension::SpectralFamily& fam, double r, double s,
                         double window_frac) {
  if (!(r > 0.0) || !(s > 0.0))
    throw std::domain_error("eval_sqrt_kernel: r, s must be positive");
  const double kappa = fam.param.kappa;
  const double lc = window_frac * fam.lambdas[fam.lambdas.size() - 1];
  double acc = 0.0;
  for (int k = 0; k < static_cast<int>(fam.lambdas.size()); ++k) {
    const double lam = fam.lambdas[k];
    const double t = lam / lc;
    const double w = std::exp(-t * t * t * t);
    acc += fam.lweights[k] * lam * w * extension::eval_p_kappa(lam, kappa, r) *
           extension::eval_p_kappa(lam, kappa, s);
  }
  Complex out(acc, 0.0);
  if (fam.has_discrete)
    out += Complex(0.0, -kappa) * extension::eval_q(kappa, r) * extension::eval_q(kappa, s);
  return out;
}

}  // namespace tfh::quadform
