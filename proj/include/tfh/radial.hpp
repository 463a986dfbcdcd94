#pragma once

#include "tfh/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace tfh::radial {

using Complex = std::complex<double>;

/// Half-axis grid: geometric spacing near the origin blending into a uniform
/// bulk.  Differentiation uses 7-point stencils on the actual nodes (6th
/// order, one-sided closures); integration weights come from degree-5 local
/// interpolation, carried out in log(r) across the graded region so that
/// steep inverse-power integrands keep their accuracy.
class RadialGrid {
public:
  struct Interval {
    int start;                // first node of the 6-point stencil
    std::array<double, 6> w;  // weights on f(r_{start..start+5})
  };

  static std::shared_ptr<const RadialGrid> make(int n = 2048, double r_max = 40.0,
                                                double r_first = 5e-4, double growth = 1.15);

  const Eigen::ArrayXd& r() const { return r_; }
  const Eigen::ArrayXd& weights() const { return w_; }
  int size() const { return static_cast<int>(r_.size()); }
  double r_max() const { return r_max_; }
  double bulk_spacing() const { return bulk_h_; }

  template <class S>
  Eigen::Array<S, Eigen::Dynamic, 1> derivative(const Eigen::Array<S, Eigen::Dynamic, 1>& f,
                                                int order) const {
    const int n = size();
    if (static_cast<int>(f.size()) != n) throw GridError("derivative: size mismatch");
    if (order != 1 && order != 2) throw std::invalid_argument("derivative: order 1 or 2");
    Eigen::Array<S, Eigen::Dynamic, 1> out(n);
    const Eigen::ArrayXXd& w = (order == 1) ? d1w_ : d2w_;
    for (int i = 0; i < n; ++i) {
      S acc{};
      const int s0 = dstart_[i];
      for (int j = 0; j < 7; ++j) acc += w(i, j) * f[s0 + j];
      out[i] = acc;
    }
    return out;
  }

  /// 4th-order second derivative (5-point stencils); used for accuracy flags.
  template <class S>
  Eigen::Array<S, Eigen::Dynamic, 1> second_derivative_order4(
      const Eigen::Array<S, Eigen::Dynamic, 1>& f) const {
    const int n = size();
    Eigen::Array<S, Eigen::Dynamic, 1> out(n);
    for (int i = 0; i < n; ++i) {
      S acc{};
      const int s0 = d4start_[i];
      for (int j = 0; j < 5; ++j) acc += d2w4_(i, j) * f[s0 + j];
      out[i] = acc;
    }
    return out;
  }

  template <class S>
  S integrate(const Eigen::Array<S, Eigen::Dynamic, 1>& f) const {
    S acc{};
    for (const Interval& iv : intervals_lin_)
      for (int j = 0; j < 6; ++j) acc += iv.w[j] * f[iv.start + j];
    return acc;
  }

  /// P[i] = integral of f over [0, r_i]; interpolation in r (integrand
  /// assumed smooth at the origin).
  template <class S>
  Eigen::Array<S, Eigen::Dynamic, 1> integrate_prefix(
      const Eigen::Array<S, Eigen::Dynamic, 1>& f) const {
    const int n = size();
    Eigen::Array<S, Eigen::Dynamic, 1> out(n);
    S acc{};
    for (int i = 0; i < n; ++i) {
      const Interval& iv = intervals_lin_[static_cast<std::size_t>(i)];
      for (int j = 0; j < 6; ++j) acc += iv.w[j] * f[iv.start + j];
      out[i] = acc;
    }
    return out;
  }

  /// Q[i] = integral of f over [r_i, r_max]; interpolation in log(r) across
  /// the graded region, so inverse-power integrands stay accurate.  Never
  /// touches [0, r_0] and therefore admits integrands singular at the origin.
  template <class S>
  Eigen::Array<S, Eigen::Dynamic, 1> integrate_suffix(
      const Eigen::Array<S, Eigen::Dynamic, 1>& f) const {
    const int n = size();
    Eigen::Array<S, Eigen::Dynamic, 1> out(n);
    S acc{};
    out[n - 1] = acc;
    for (int i = n - 2; i >= 0; --i) {
      const Interval& iv = intervals_log_[static_cast<std::size_t>(i) + 1];
      for (int j = 0; j < 6; ++j) acc += iv.w[j] * f[iv.start + j];
      out[i] = acc;
    }
    return out;
  }

  int nearest_node(double r) const;
  bool same_as(const RadialGrid& other) const;
  const std::vector<Interval>& intervals() const { return intervals_lin_; }

private:
  RadialGrid() = default;

  Eigen::ArrayXd r_, w_;
  double r_max_ = 0.0, bulk_h_ = 0.0;
  Eigen::ArrayXi dstart_, d4start_;
  Eigen::ArrayXXd d1w_, d2w_, d2w4_;
  // [0] covers [0, r_0]; [k] covers [r_{k-1}, r_k].
  std::vector<Interval> intervals_lin_, intervals_log_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

void check_same_grid(const GridPtr& a, const GridPtr& b);

enum class DecayClass { Unknown, Compact, Exponential, Algebraic, Oscillatory };

/// Sampled radial profile with Taylor data at r = 0.  Endpoint data is fitted
/// from the first nodes unless a closed-form factory supplies it exactly.
template <class S>
struct RadialFunction {
  GridPtr grid;
  Eigen::Array<S, Eigen::Dynamic, 1> values;
  S u0{}, u1{}, u2{};  // u(0), u'(0), u''(0)
  DecayClass decay = DecayClass::Unknown;
  bool accuracy_flag = false;

  double norm_inf() const { return values.abs().maxCoeff(); }
};

using RadialFunctionR = RadialFunction<double>;
using RadialFunctionC = RadialFunction<Complex>;

/// Least-squares cubic over the first 8 nodes; returns {u(0), u'(0), u''(0)}.
template <class S>
std::array<S, 3> fit_endpoint(const RadialGrid& grid,
                              const Eigen::Array<S, Eigen::Dynamic, 1>& values) {
  const int k = 8;
  if (grid.size() < k) throw GridError("fit_endpoint: grid too small");
  const double c = grid.r()[k - 1];
  Eigen::MatrixXd design(k, 4);
  for (int i = 0; i < k; ++i) {
    const double x = grid.r()[i] / c;
    design(i, 0) = 1.0;
    design(i, 1) = x;
    design(i, 2) = x * x;
    design(i, 3) = x * x * x;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  std::array<S, 3> out;
  if constexpr (std::is_same_v<S, double>) {
    Eigen::VectorXd a = qr.solve(values.head(k).matrix());
    out = {a[0], a[1] / c, 2.0 * a[2] / (c * c)};
  } else {
    Eigen::VectorXd re = qr.solve(values.head(k).real().matrix());
    Eigen::VectorXd im = qr.solve(values.head(k).imag().matrix());
    out = {Complex(re[0], im[0]), Complex(re[1], im[1]) / c,
           2.0 * Complex(re[2], im[2]) / (c * c)};
  }
  return out;
}

template <class S>
RadialFunction<S> from_samples(GridPtr grid, Eigen::Array<S, Eigen::Dynamic, 1> values,
                               DecayClass decay = DecayClass::Unknown) {
  RadialFunction<S> f;
  f.grid = std::move(grid);
  f.values = std::move(values);
  const auto end = fit_endpoint<S>(*f.grid, f.values);
  f.u0 = end[0];
  f.u1 = end[1];
  f.u2 = end[2];
  f.decay = decay;
  return f;
}

RadialFunctionR from_function(GridPtr grid, const std::function<double(double)>& fn,
                              DecayClass decay = DecayClass::Unknown);
RadialFunctionR from_function(GridPtr grid, const std::function<double(double)>& fn,
                              const std::array<double, 3>& endpoints,
                              DecayClass decay = DecayClass::Unknown);

RadialFunctionC to_complex(const RadialFunctionR& u);

/// T_l u = -u'' + l(l+1) u / r^2.  Sets the accuracy flag when the 4th- and
/// 6th-order second derivatives disagree beyond 1e-4 relative.
template <class S>
RadialFunction<S> apply_tl(int l, const RadialFunction<S>& u) {
  if (l < 1) throw std::domain_error("apply_tl: l >= 1 required");
  const RadialGrid& g = *u.grid;
  RadialFunction<S> out;
  out.grid = u.grid;
  const auto d2 = g.derivative(u.values, 2);
  out.values = -d2 + double(l) * (l + 1) * u.values / g.r().square();
  const auto d2c = g.second_derivative_order4(u.values);
  const double scale = d2.abs().maxCoeff();
  out.accuracy_flag = scale > 0.0 && (d2 - d2c).abs().maxCoeff() > 1e-4 * scale;
  const auto end = fit_endpoint<S>(g, out.values);
  out.u0 = end[0];
  out.u1 = end[1];
  out.u2 = end[2];
  out.decay = u.decay;
  return out;
}

double tl_inverse_kernel(int l, double r, double s);

/// u = T_l^{-1} f with the kernel split exactly at the evaluation node:
/// u(r) = [r^{-l} * int_0^r s^{l+1} f + r^{l+1} * int_r^inf s^{-l} f] / (2l+1).
template <class S>
RadialFunction<S> apply_tl_inverse(int l, const RadialFunction<S>& f) {
  if (l < 1) throw std::domain_error("apply_tl_inverse: l >= 1 required");
  const RadialGrid& g = *f.grid;
  const Eigen::ArrayXd& r = g.r();
  Eigen::Array<S, Eigen::Dynamic, 1> lowint = f.values;
  Eigen::Array<S, Eigen::Dynamic, 1> highint = f.values;
  for (int i = 0; i < g.size(); ++i) {
    lowint[i] *= std::pow(r[i], l + 1);
    highint[i] *= std::pow(r[i], -l);
  }
  const auto P = g.integrate_prefix(lowint);
  const auto Q = g.integrate_suffix(highint);
  RadialFunction<S> out;
  out.grid = f.grid;
  out.values.resize(g.size());
  for (int i = 0; i < g.size(); ++i)
    out.values[i] = (std::pow(r[i], -l) * P[i] + std::pow(r[i], l + 1) * Q[i]) / (2.0 * l + 1.0);
  const auto end = fit_endpoint<S>(g, out.values);
  out.u0 = end[0];
  out.u1 = end[1];
  out.u2 = end[2];
  out.decay = f.decay;
  return out;
}

/// (u, v) = int conj(u) v dr.
template <class S>
S inner_plain(const RadialFunction<S>& u, const RadialFunction<S>& v) {
  check_same_grid(u.grid, v.grid);
  Eigen::Array<S, Eigen::Dynamic, 1> prod(u.values.size());
  if constexpr (std::is_same_v<S, double>)
    prod = u.values * v.values;
  else
    prod = u.values.conjugate() * v.values;
  return u.grid->integrate(prod);
}

/// <u, v>_l = int (conj(u') v' + l(l+1) conj(u) v / r^2) dr, u(0) = v(0) = 0.
template <class S>
S inner_angle(int l, const RadialFunction<S>& u, const RadialFunction<S>& v) {
  check_same_grid(u.grid, v.grid);
  const double scale_u = u.norm_inf(), scale_v = v.norm_inf();
  if (std::abs(u.u0) > 1e-8 * (scale_u + 1e-300) || std::abs(v.u0) > 1e-8 * (scale_v + 1e-300))
    throw std::domain_error("inner_angle: arguments must vanish at r = 0");
  const RadialGrid& g = *u.grid;
  const auto du = g.derivative(u.values, 1);
  const auto dv = g.derivative(v.values, 1);
  Eigen::Array<S, Eigen::Dynamic, 1> prod(u.values.size());
  if constexpr (std::is_same_v<S, double>)
    prod = du * dv + double(l) * (l + 1) * u.values * v.values / g.r().square();
  else
    prod = du.conjugate() * dv +
           double(l) * (l + 1) * u.values.conjugate() * v.values / g.r().square();
  return g.integrate(prod);
}

}  // namespace tfh::radial
