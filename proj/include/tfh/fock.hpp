#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace tfh::fock {

using Complex = std::complex<double>;

/// Finite truncation of the diagonalised Hamiltonian: continuous-mode
/// frequencies lambda_i > 0 plus any number of discrete modes with kappa < 0
/// (one per channel when per-m extensions differ).
struct ModeSystem {
  Eigen::ArrayXd lambdas;
  std::vector<double> discrete_kappas;

  int n_continuous() const { return static_cast<int>(lambdas.size()); }
  int n_discrete() const { return static_cast<int>(discrete_kappas.size()); }
  int n_modes() const { return n_continuous() + n_discrete(); }
  bool has_discrete() const { return n_discrete() > 0; }
  void validate() const;
};

/// Concatenation of per-channel systems (product states over channels).
ModeSystem product_system(const std::vector<ModeSystem>& channels);

constexpr int kMaxModes = 16;
constexpr int kMaxDegree = 8;

/// Polynomial in the mode variables times the fixed Gaussian
/// exp(-1/2 sum lambda_i u_i^2 + sum (i kappa_d / 2) u_d^2).
/// Monomials are exponent tuples over (continuous..., discrete...) modes.
struct ModeState {
  using Monomial = std::vector<std::uint8_t>;
  std::map<Monomial, Complex> poly;

  static ModeState vacuum(const ModeSystem& sys);
  bool is_zero(double tol = 0.0) const;
  int degree() const;
  double norm_inf() const;
};

ModeState vacuum_state(const ModeSystem& sys);

/// b_i = lambda_i u_i - d/du_i  (continuous modes only).
ModeState apply_create(const ModeSystem& sys, int i, const ModeState& s);
/// a_i = lambda_i u_i + d/du_i  (continuous modes only).
ModeState apply_annihilate(const ModeSystem& sys, int i, const ModeState& s);

/// H = sum_i (-d^2/du_i^2 + lambda_i^2 u_i^2) - sum_d kappa_d^2 u_d^2 - d^2/du_d^2.
ModeState apply_hamiltonian(const ModeSystem& sys, const ModeState& s);

/// Symmetric coefficients sigma_n over continuous-mode indices.
struct FockCoefficients {
  int n = 0;  // particle number
  std::map<std::vector<int>, Complex> entries;

  /// True when every entry key is already sorted (Bose symmetric storage).
  bool is_symmetric() const;
};

/// sum sigma(i_1..i_n) b_{i_1} ... b_{i_n} |vacuum>; non-symmetric input is
/// symmetrised (with `symmetrized` set when that changed anything).
ModeState build_n_particle(const ModeSystem& sys, const FockCoefficients& sigma,
                           bool* symmetrized = nullptr);

struct EigenCheck {
  bool is_eigen = false;
  Complex eigenvalue{};
};

/// Exact ratio test: H s = c s on the polynomial algebra.
EigenCheck eigen_check(const ModeSystem& sys, const ModeState& s, double tol = 1e-12);

ModeState add(const ModeState& a, const ModeState& b);
ModeState scale(const ModeState& a, Complex c);

}  // namespace tfh::fock
