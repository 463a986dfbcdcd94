#include "tfh/radial.hpp"

#include "tfh/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace tfh::radial {

namespace {

// Node positions for a given bulk spacing: geometric run r_first * growth^i
// capped at h, n-1 gaps in total.
double last_node(int n, double r_first, double growth, double h) {
  double pos = r_first;
  double step = r_first;
  for (int i = 1; i < n; ++i) {
    step = std::min(step * growth, h);
    pos += step;
  }
  return pos;
}

}  // namespace

std::shared_ptr<const RadialGrid> RadialGrid::make(int n, double r_max, double r_first,
                                                   double growth) {
  if (n < 64) throw std::invalid_argument("RadialGrid: need at least 64 nodes");
  if (!(r_first > 0.0) || !(r_max > r_first))
    throw std::invalid_argument("RadialGrid: bad extents");
  if (!(growth > 1.0001)) throw std::invalid_argument("RadialGrid: growth must exceed 1");

  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid());
  grid->r_max_ = r_max;

  // Bisect the bulk spacing so that node n-1 lands on r_max.
  double lo = (r_max - r_first) / (n - 1) * 0.5;
  double hi = r_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (last_node(n, r_first, growth, mid) < r_max ? lo : hi) = mid;
  }
  const double h = 0.5 * (lo + hi);
  grid->bulk_h_ = h;

  Eigen::ArrayXd& r = grid->r_;
  r.resize(n);
  r[0] = r_first;
  double step = r_first;
  for (int i = 1; i < n; ++i) {
    step = std::min(step * growth, h);
    r[i] = r[i - 1] + step;
  }
  r[n - 1] = r_max;

  // Derivative stencils.
  grid->dstart_.resize(n);
  grid->d1w_.resize(n, 7);
  grid->d2w_.resize(n, 7);
  grid->d4start_.resize(n);
  grid->d2w4_.resize(n, 5);
  for (int i = 0; i < n; ++i) {
    const int s7 = std::clamp(i - 3, 0, n - 7);
    grid->dstart_[i] = s7;
    const Eigen::MatrixXd w7 = fd_weights(r.segment(s7, 7), r[i], 2);
    grid->d1w_.row(i) = w7.row(1).array();
    grid->d2w_.row(i) = w7.row(2).array();
    const int s5 = std::clamp(i - 2, 0, n - 5);
    grid->d4start_[i] = s5;
    const Eigen::MatrixXd w5 = fd_weights(r.segment(s5, 5), r[i], 2);
    grid->d2w4_.row(i) = w5.row(2).array();
  }

  // Interval integration weights: degree-5 interpolation.  Two families:
  // plain-r interpolation for integrands smooth at the origin, log-r across
  // the graded region for the suffix integrals of steep inverse powers.
  grid->intervals_lin_.resize(n);
  grid->intervals_log_.resize(n);
  auto solve_weights = [](const std::array<double, 6>& xi, double a, double b,
                          std::array<double, 6>& w) {
    const double c = 0.5 * (a + b);
    double span = 1e-300;
    for (double x : xi) span = std::max(span, std::abs(x - c));
    const double ta = (a - c) / span, tb = (b - c) / span;
    Eigen::MatrixXd vt(6, 6);
    Eigen::VectorXd mom(6);
    double pa = 1.0, pb = 1.0;
    for (int p = 0; p < 6; ++p) {
      for (int j = 0; j < 6; ++j) vt(p, j) = std::pow((xi[j] - c) / span, p);
      pa *= ta;
      pb *= tb;
      mom[p] = span * (pb - pa) / (p + 1);
    }
    const Eigen::VectorXd sol = vt.partialPivLu().solve(mom);
    for (int j = 0; j < 6; ++j) w[j] = sol[j];
  };

  for (int k = 0; k < n; ++k) {
    const double a = (k == 0) ? 0.0 : r[k - 1];
    const double b = r[k];
    const int start = std::clamp(k - 3, 0, n - 6);
    std::array<double, 6> xi;

    Interval& lin = grid->intervals_lin_[k];
    lin.start = start;
    for (int j = 0; j < 6; ++j) xi[j] = r[start + j];
    solve_weights(xi, a, b, lin.w);

    Interval& lg = grid->intervals_log_[k];
    lg.start = start;
    if (k > 0 && r[start + 5] / r[start] > 1.12) {
      for (int j = 0; j < 6; ++j) xi[j] = std::log(r[start + j]);
      solve_weights(xi, std::log(a), std::log(b), lg.w);
      // integral in log coords picks up the Jacobian r = e^xi
      for (int j = 0; j < 6; ++j) lg.w[j] *= r[start + j];
    } else {
      lg.w = lin.w;
    }
  }

  // Plain weight vector (sum of interval contributions per node).
  grid->w_ = Eigen::ArrayXd::Zero(n);
  for (const Interval& iv : grid->intervals_lin_)
    for (int j = 0; j < 6; ++j) grid->w_[iv.start + j] += iv.w[j];

  return grid;
}

int RadialGrid::nearest_node(double rq) const {
  const int n = size();
  const double* begin = r_.data();
  const double* it = std::lower_bound(begin, begin + n, rq);
  int i = static_cast<int>(it - begin);
  if (i >= n) return n - 1;
  if (i > 0 && rq - r_[i - 1] < r_[i] - rq) return i - 1;
  return i;
}

bool RadialGrid::same_as(const RadialGrid& other) const {
  if (this == &other) return true;
  return size() == other.size() && (r_ == other.r_).all();
}

void check_same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b) throw GridError("radial: missing grid");
  if (a.get() == b.get()) return;
  if (!a->same_as(*b)) throw GridError("radial: functions live on different grids");
}

RadialFunctionR from_function(GridPtr grid, const std::function<double(double)>& fn,
                              DecayClass decay) {
  Eigen::ArrayXd v(grid->size());
  for (int i = 0; i < grid->size(); ++i) v[i] = fn(grid->r()[i]);
  return from_samples<double>(std::move(grid), std::move(v), decay);
}

RadialFunctionR from_function(GridPtr grid, const std::function<double(double)>& fn,
                              const std::array<double, 3>& endpoints, DecayClass decay) {
  RadialFunctionR f;
  f.grid = std::move(grid);
  f.values.resize(f.grid->size());
  for (int i = 0; i < f.grid->size(); ++i) f.values[i] = fn(f.grid->r()[i]);
  f.u0 = endpoints[0];
  f.u1 = endpoints[1];
  f.u2 = endpoints[2];
  f.decay = decay;
  return f;
}

RadialFunctionC to_complex(const RadialFunctionR& u) {
  RadialFunctionC c;
  c.grid = u.grid;
  c.values = u.values.cast<Complex>();
  c.u0 = u.u0;
  c.u1 = u.u1;
  c.u2 = u.u2;
  c.decay = u.decay;
  c.accuracy_flag = u.accuracy_flag;
  return c;
}

double tl_inverse_kernel(int l, double r, double s) {
  if (l < 1) throw std::domain_error("tl_inverse_kernel: l >= 1 required");
  if (!(r > 0.0) || !(s > 0.0)) throw std::domain_error("tl_inverse_kernel: r, s > 0");
  const double lo = std::min(r, s), hi = std::max(r, s);
  return std::pow(lo, l + 1) / std::pow(hi, l) / (2.0 * l + 1.0);
}

}  // namespace tfh::radial
