#include "tfh/extension.hpp"

#include <cmath>

namespace tfh::extension {

namespace {
constexpr double kTwoOverSqrt2Pi = 0.7978845608028653558799;  // 2/sqrt(2*pi)
}

double phase_shift(double lambda, double kappa) {
  if (!(lambda > 0.0)) throw std::domain_error("phase_shift: lambda must be positive");
  return -std::atan2(kappa, lambda);
}

double eval_p_kappa(double lambda, double kappa, double r) {
  if (!(lambda > 0.0)) throw std::domain_error("eval_p_kappa: lambda must be positive");
  if (r < 0.0) throw std::domain_error("eval_p_kappa: r must be nonnegative");
  const double zeta = phase_shift(lambda, kappa);
  const double x = lambda * r;
  if (x < 0.5) {
    // p = (2/sqrt(2pi)) * sum_{m>=1} -sin(zeta + m pi/2) * m/(m+1)! *
    //     lambda^{m-1} r^m
    const double sz = std::sin(zeta), cz = std::cos(zeta);
    const double cycle[4] = {cz, -sz, -cz, sz};  // sin(zeta + m pi/2), m = 1..4
    double term = r;                             // lambda^{m-1} r^m at m = 1
    double fact = 2.0;                           // (m+1)!
    double acc = 0.0;
    for (int m = 1; m <= 14; ++m) {
      acc += -cycle[(m - 1) % 4] * (m / fact) * term;
      term *= x;
      fact *= (m + 2);
    }
    return kTwoOverSqrt2Pi * acc;
  }
  const double c = std::cos(zeta + x), s = std::sin(zeta + x);
  return kTwoOverSqrt2Pi / (lambda * lambda) *
         (-lambda * s - (c - std::cos(zeta)) / r);
}

double sph_bessel_j(int l, double x) {
  if (l < 0) throw std::domain_error("sph_bessel_j: l >= 0");
  if (x < 0.0) throw std::domain_error("sph_bessel_j: x >= 0");
  if (l == 0) {
    if (x < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
  }
  if (x < std::max(0.5, std::sqrt(double(l)))) {
    // Ascending series around x = 0.
    double lead = 1.0;
    for (int k = 1; k <= l; ++k) lead *= x / (2.0 * k + 1.0);
    double term = 1.0, acc = 1.0;
    const double x2 = -0.5 * x * x;
    for (int k = 1; k <= 30; ++k) {
      term *= x2 / (k * (2.0 * l + 2.0 * k + 1.0));
      acc += term;
      if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return lead * acc;
  }
  if (x >= l + 1.5) {
    // Upward recurrence is stable here.
    double jm = std::sin(x) / x;
    if (l == 0) return jm;
    double j = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int k = 1; k < l; ++k) {
      const double jn = (2.0 * k + 1.0) / x * j - jm;
      jm = j;
      j = jn;
    }
    return j;
  }
  // Miller's downward recurrence, normalised by j_0.
  const int start = l + 20 + static_cast<int>(x);
  double jkp1 = 0.0, jk = 1e-30, jl = 0.0;
  for (int k = start; k >= 1; --k) {
    const double jkm1 = (2.0 * k + 1.0) / x * jk - jkp1;
    jkp1 = jk;
    jk = jkm1;
    if (k - 1 == l) jl = jk;
    if (std::abs(jk) > 1e250) {
      jk *= 1e-250;
      jkp1 *= 1e-250;
      jl *= 1e-250;
    }
  }
  return jl * (std::sin(x) / x) / jk;
}

double eval_p_free(int l, double lambda, double r) {
  if (l < 1) throw std::domain_error("eval_p_free: l >= 1 required");
  if (!(lambda > 0.0)) throw std::domain_error("eval_p_free: lambda must be positive");
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return sign * kTwoOverSqrt2Pi * r * sph_bessel_j(l, lambda * r);
}

double eval_q(double kappa, double r) {
  if (!(kappa < 0.0)) throw std::domain_error("eval_q: kappa must be negative");
  const double c = std::sqrt(-2.0 / (kappa * kappa * kappa));
  const double x = kappa * r;
  if (std::abs(x) < 0.5) {
    // q = C * sum_{n>=1} kappa^{n+1} r^n * n/(n+1)!
    double term = kappa * kappa * r;  // kappa^{n+1} r^n at n = 1
    double fact = 2.0;                // (n+1)!
    double acc = 0.0;
    for (int n = 1; n <= 16; ++n) {
      acc += (n / fact) * term;
      term *= x;
      fact *= (n + 2);
    }
    return c * acc;
  }
  return c * (kappa * std::exp(x) + (1.0 - std::exp(x)) / r);
}

RadialFunctionR make_p_kappa(GridPtr grid, double lambda, double kappa) {
  const double zeta = phase_shift(lambda, kappa);
  const double p1 = -std::cos(zeta) / std::sqrt(2.0 * M_PI);
  const double p2 = 4.0 * lambda * std::sin(zeta) / (3.0 * std::sqrt(2.0 * M_PI));
  return radial::from_function(
      std::move(grid), [=](double r) { return eval_p_kappa(lambda, kappa, r); },
      {0.0, p1, p2}, radial::DecayClass::Oscillatory);
}

RadialFunctionR make_p_free(GridPtr grid, int l, double lambda) {
  const double u2 = (l == 1) ? -kTwoOverSqrt2Pi * 2.0 * lambda / 3.0 : 0.0;
  return radial::from_function(
      std::move(grid), [=](double r) { return eval_p_free(l, lambda, r); }, {0.0, 0.0, u2},
      radial::DecayClass::Oscillatory);
}

RadialFunctionR make_q(GridPtr grid, double kappa) {
  if (!(kappa < 0.0)) throw std::domain_error("make_q: kappa must be negative");
  const double c = std::sqrt(-2.0 / (kappa * kappa * kappa));
  return radial::from_function(
      std::move(grid), [=](double r) { return eval_q(kappa, r); },
      {0.0, c * kappa * kappa / 2.0, 2.0 * c * kappa * kappa * kappa / 3.0},
      radial::DecayClass::Algebraic);
}

RadialFunctionR make_t1_q(GridPtr grid, double kappa) {
  if (!(kappa < 0.0)) throw std::domain_error("make_t1_q: kappa must be negative");
  const double c = std::sqrt(-2.0 / (kappa * kappa * kappa));
  return radial::from_function(
      std::move(grid),
      [=](double r) { return c * kappa * kappa * std::exp(kappa * r) * (1.0 / r - kappa); },
      {0.0, 0.0, 0.0}, radial::DecayClass::Exponential);
}

BoundaryCheck check_boundary_condition(const RadialFunctionR& u, double kappa) {
  BoundaryCheck out;
  const double tiny = 1e-300;
  const double a = 3.0 * u.u2;
  if (std::isinf(kappa)) {
    // Friedrichs member: the condition degenerates to u'(0) = 0.
    out.residual_kappa_form = std::abs(u.u1) / (std::abs(u.u1) + std::abs(u.u2) + tiny);
  } else {
    const double b = 4.0 * kappa * u.u1;
    out.residual_kappa_form = std::abs(a - b) / std::max({std::abs(a), std::abs(b), tiny});
  }
  const double bl = 4.0 * u.u1;
  out.residual_literal = std::abs(a - bl) / std::max({std::abs(a), std::abs(bl), tiny});
  return out;
}

SpectralFamily make_spectral_family(ExtensionParam param, GridPtr grid, int count,
                                    double lambda_max) {
  if (count < 8) throw std::invalid_argument("make_spectral_family: count too small");
  SpectralFamily fam;
  fam.param = param;
  fam.grid = grid;
  if (lambda_max <= 0.0) lambda_max = M_PI / (4.0 * grid->bulk_spacing());
  const double dl = lambda_max / count;
  fam.lambdas.resize(count);
  fam.lweights.resize(count);
  for (int k = 0; k < count; ++k) {
    fam.lambdas[k] = dl * (k + 1);
    fam.lweights[k] = (k == count - 1) ? 0.5 * dl : dl;
  }
  fam.has_discrete = !param.friedrichs() && param.kappa < 0.0;
  if (fam.has_discrete) {
    fam.q = make_q(grid, param.kappa);
    fam.t1q = make_t1_q(grid, param.kappa);
  }
  return fam;
}

namespace {

template <class S>
bool tail_exceeds(const Eigen::Array<S, Eigen::Dynamic, 1>& v) {
  const int n = static_cast<int>(v.size());
  const double peak = v.abs().maxCoeff();
  double tail = 0.0;
  for (int i = n - 5; i < n; ++i) tail = std::max(tail, std::abs(v[i]));
  return peak > 0.0 && tail > 1e-12 * peak;
}

}  // namespace

template <class S>
SpectralCoefficients<S> forward_transform(const RadialFunction<S>& u, const SpectralFamily& fam,
                                          const RadialFunction<S>& t1u) {
  radial::check_same_grid(u.grid, fam.grid);
  radial::check_same_grid(t1u.grid, fam.grid);
  const radial::RadialGrid& g = *fam.grid;
  const int n = g.size();
  const int nl = static_cast<int>(fam.lambdas.size());

  Eigen::Array<S, Eigen::Dynamic, 1> wt1u = t1u.values;
  for (int i = 0; i < n; ++i) wt1u[i] *= g.weights()[i];

  SpectralCoefficients<S> out;
  out.u_hat.resize(nl);
  const double kappa = fam.param.kappa;
  for (int k = 0; k < nl; ++k) {
    const double lam = fam.lambdas[k];
    S acc{};
    for (int i = 0; i < n; ++i) acc += eval_p_kappa(lam, kappa, g.r()[i]) * wt1u[i];
    out.u_hat[k] = acc;
  }
  out.has_discrete = fam.has_discrete;
  if (fam.has_discrete) {
    S acc{};
    for (int i = 0; i < n; ++i) acc += fam.q.values[i] * wt1u[i];
    out.u_hat_d = acc;
  }
  out.accuracy_flag = tail_exceeds(t1u.values);
  return out;
}

template <class S>
SpectralCoefficients<S> forward_transform(const RadialFunction<S>& u,
                                          const SpectralFamily& fam) {
  return forward_transform(u, fam, radial::apply_tl(1, u));
}

template <class S>
RadialFunction<S> inverse_transform(const SpectralCoefficients<S>& c,
                                    const SpectralFamily& fam) {
  const radial::RadialGrid& g = *fam.grid;
  const int n = g.size();
  const int nl = static_cast<int>(fam.lambdas.size());
  if (static_cast<int>(c.u_hat.size()) != nl)
    throw std::invalid_argument("inverse_transform: coefficient/grid size mismatch");

  Eigen::Array<S, Eigen::Dynamic, 1> vals = Eigen::Array<S, Eigen::Dynamic, 1>::Zero(n);
  const double kappa = fam.param.kappa;
  for (int k = 0; k < nl; ++k) {
    const S w = fam.lweights[k] * c.u_hat[k];
    const double lam = fam.lambdas[k];
    for (int i = 0; i < n; ++i) vals[i] += w * eval_p_kappa(lam, kappa, g.r()[i]);
  }
  if (c.has_discrete && fam.has_discrete)
    for (int i = 0; i < n; ++i) vals[i] += c.u_hat_d * fam.q.values[i];
  return radial::from_samples<S>(fam.grid, std::move(vals));
}

double spectral_norm(const SpectralCoefficientsR& c, const SpectralFamily& fam) {
  double acc = (fam.lweights * c.u_hat.square()).sum();
  if (c.has_discrete) acc += c.u_hat_d * c.u_hat_d;
  return acc;
}

double spectral_form(const SpectralCoefficientsR& c, const SpectralFamily& fam) {
  double acc = (fam.lweights * fam.lambdas.square() * c.u_hat.square()).sum();
  if (c.has_discrete) {
    const double kappa = fam.param.kappa;
    acc -= kappa * kappa * c.u_hat_d * c.u_hat_d;
  }
  return acc;
}

template SpectralCoefficients<double> forward_transform(const RadialFunction<double>&,
                                                        const SpectralFamily&);
template SpectralCoefficients<double> forward_transform(const RadialFunction<double>&,
                                                        const SpectralFamily&,
                                                        const RadialFunction<double>&);
template SpectralCoefficients<radial::Complex> forward_transform(
    const RadialFunction<radial::Complex>&, const SpectralFamily&);
template SpectralCoefficients<radial::Complex> forward_transform(
    const RadialFunction<radial::Complex>&, const SpectralFamily&,
    const RadialFunction<radial::Complex>&);
template RadialFunction<double> inverse_transform(const SpectralCoefficients<double>&,
                                                  const SpectralFamily&);
template RadialFunction<radial::Complex> inverse_transform(
    const SpectralCoefficients<radial::Complex>&, const SpectralFamily&);

}  // namespace tfh::extension
