#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace tfh {

/// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
/// Returns an (order+1) x n matrix W such that f^(k)(z) ~= sum_j W(k,j) f(x_j).
Eigen::MatrixXd fd_weights(const Eigen::ArrayXd& x, double z, int max_order);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, Eigen::ArrayXd& nodes, Eigen::ArrayXd& weights);

/// Polynomial extrapolation of (x_i, y_i) to x = 0 (Neville tableau).
/// Fills `diagonal` with the successive extrapolants if non-null.
double neville_to_zero(const std::vector<double>& x, const std::vector<double>& y,
                       std::vector<double>* diagonal = nullptr);

/// Deterministic 64-bit generator (splitmix64); identical streams on every
/// platform, unlike the std distributions.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
private:
  std::uint64_t state_;
};

/// Floating-point text form used in all emitted CSV/JSON: 17 significant
/// digits, locale-independent.
std::string format_float(double v);

}  // namespace tfh
