#pragma once

#include "tfh/radial.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace tfh::extension {

using radial::GridPtr;
using radial::RadialFunction;
using radial::RadialFunctionR;

/// Extension parameter kappa (inverse length).  kappa = +infinity selects the
/// Friedrichs member, whose kernels are the regular spherical-Bessel ones.
struct ExtensionParam {
  double kappa = 0.0;
  bool friedrichs() const { return std::isinf(kappa) && kappa > 0; }
  static ExtensionParam free() { return {std::numeric_limits<double>::infinity()}; }
};

/// zeta = -atan2(kappa, lambda), the branch with zeta(kappa=0) = 0 and
/// zeta -> -pi/2 as kappa -> +infinity; satisfies e^{2 i zeta} =
/// (lambda - i kappa)/(lambda + i kappa).
double phase_shift(double lambda, double kappa);

/// Continuum kernel p^kappa_{1 lambda}(r); series continuation near r = 0.
double eval_p_kappa(double lambda, double kappa, double r);

/// Free kernel p_{l lambda}(r) = (-1)^l sqrt(2/pi) r j_l(lambda r).
double eval_p_free(int l, double lambda, double r);

/// Discrete eigenfunction q_kappa (kappa < 0), unit <q,q>_1 norm.
double eval_q(double kappa, double r);

/// Spherical Bessel j_l, stable for the l range used here.
double sph_bessel_j(int l, double x);

/// Sampled kernels with series-exact endpoint data.
RadialFunctionR make_p_kappa(GridPtr grid, double lambda, double kappa);
RadialFunctionR make_p_free(GridPtr grid, int l, double lambda);
RadialFunctionR make_q(GridPtr grid, double kappa);
/// T_1 q in closed form: C kappa^2 e^{kappa r} (1/r - kappa).
RadialFunctionR make_t1_q(GridPtr grid, double kappa);

/// Action of the extension: T_1 u - (2/r) u'(0); requires u(0) = 0.
template <class S>
RadialFunction<S> apply_t1_kappa(double /*kappa*/, const RadialFunction<S>& u) {
  if (std::abs(u.u0) > 1e-8 * (u.norm_inf() + 1e-300))
    throw std::domain_error("apply_t1_kappa: u(0) must vanish");
  RadialFunction<S> out = radial::apply_tl(1, u);
  out.values -= (2.0 * u.u1) / out.grid->r();
  return out;
}

struct BoundaryCheck {
  double residual_kappa_form = 0.0;  // |3 u''(0) - 4 kappa u'(0)|, normalised
  double residual_literal = 0.0;     // |3 u''(0) - 4 u'(0)|, normalised (diagnostic)
};

BoundaryCheck check_boundary_condition(const RadialFunctionR& u, double kappa);

/// kappa plus a lambda grid: the spectral data of the extension.  The lambda
/// nodes are uniform with an implicit node at lambda = 0 (where every kernel
/// vanishes); lweights are the corresponding trapezoid weights on [0, l_max].
struct SpectralFamily {
  ExtensionParam param;
  GridPtr grid;
  Eigen::ArrayXd lambdas;
  Eigen::ArrayXd lweights;
  bool has_discrete = false;
  RadialFunctionR q, t1q;  // populated when has_discrete
};

/// lambda_max = 0 picks pi / (4 h) with h the bulk grid spacing.
SpectralFamily make_spectral_family(ExtensionParam param, GridPtr grid, int count = 4096,
                                    double lambda_max = 0.0);

template <class S>
struct SpectralCoefficients {
  Eigen::Array<S, Eigen::Dynamic, 1> u_hat;
  S u_hat_d{};
  bool has_discrete = false;
  bool accuracy_flag = false;
};

using SpectralCoefficientsR = SpectralCoefficients<double>;

/// u_hat(lambda) = int p^kappa(r) (T_1 u)(r) dr, u_hat_d = int q T_1 u dr.
/// The overload taking t1u reuses a precomputed (possibly closed-form) T_1 u.
template <class S>
SpectralCoefficients<S> forward_transform(const RadialFunction<S>& u, const SpectralFamily& fam);
template <class S>
SpectralCoefficients<S> forward_transform(const RadialFunction<S>& u, const SpectralFamily& fam,
                                          const RadialFunction<S>& t1u);

/// u(r) = int u_hat(lambda) p^kappa(r) dlambda + u_hat_d q(r).
template <class S>
RadialFunction<S> inverse_transform(const SpectralCoefficients<S>& c, const SpectralFamily& fam);

/// Parseval sum  int |u_hat|^2 dlambda + u_hat_d^2.
double spectral_norm(const SpectralCoefficientsR& c, const SpectralFamily& fam);

/// Extended form  int lambda^2 |u_hat|^2 dlambda - kappa^2 u_hat_d^2.
double spectral_form(const SpectralCoefficientsR& c, const SpectralFamily& fam);

}  // namespace tfh::extension
