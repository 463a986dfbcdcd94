#pragma once

#include "tfh/extension.hpp"
#include "tfh/fieldops.hpp"
#include "tfh/radial.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace tfh::quadform {

using radial::Complex;
using radial::RadialFunctionR;

struct QuadFormResult {
  double value = 0.0;
  std::vector<std::pair<double, double>> extrapolation_table;  // (r, partial value)
  bool converged = true;
};

/// Q(A) assembled channel-wise: sum ||T_l u_lm||^2 + sum (w_lm, T_l w_lm).
/// Requires every u-channel regular (u'(0) = 0).
QuadFormResult form_q(const fieldops::TransverseField& tf);

/// Q(A) as the direct gradient integral over the whole space (dual pipeline).
double form_q_gradient(const fieldops::SampledVectorField& f);

struct ShrinkingBallOptions {
  double r0 = 0.128;      // largest ball radius
  int levels = 8;         // radii r0 * 2^-k, snapped to grid nodes
  double tol = 1e-6;      // extrapolant agreement for `converged`
};

/// Q_kappa(A) by the shrinking-ball formula: volume integral outside B_r
/// minus (5/(3r) + (44/27) kappa) times the boundary integral of |A|^2,
/// extrapolated r -> 0.
QuadFormResult form_q_kappa_limit(const fieldops::SampledVectorField& f, double kappa,
                                  const ShrinkingBallOptions& opts = {});

/// Extrapolated lim_{r->0} of the boundary integral of |A|^2 (the slope
/// oracle for the kappa-difference of Q_kappa).
double surface_limit(const fieldops::SampledVectorField& f,
                     const ShrinkingBallOptions& opts = {});

/// <u, T_1kappa u>_1 via the spectral expansion:
/// int lambda^2 u_hat^2 dlambda - kappa^2 u_hat_d^2.
double form_q_kappa_spectral(const RadialFunctionR& u, const extension::SpectralFamily& fam);

/// Q_kappa^{1/2}(r, s) = int p(r) p(s) lambda W(lambda) dlambda
///                       - i kappa q(r) q(s) (kappa < 0), with a smooth
/// large-lambda damping window W = exp(-(lambda/(frac*lambda_max))^4).
Complex eval_sqrt_kernel(const extension::SpectralFamily& fam, double r, double s,
                         double window_frac = 0.6);

}  // namespace tfh::quadform
