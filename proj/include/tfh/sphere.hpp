#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace tfh::sphere {

using Complex = std::complex<double>;

/// How the polar angle of an (psi, phi) pair is to be read.
///   Colatitude     : z = r cos(psi), psi in [0, pi]   (internal convention)
///   PaperLatitude  : z = r sin(psi), psi in [0, pi]   (input convention flag;
///                    note this chart traces the upper hemisphere twice)
enum class PolarConvention { Colatitude, PaperLatitude };

struct AngularPoint {
  double psi = 0.0;
  double phi = 0.0;
};

/// Polar angle of `p` as a colatitude.
double colatitude(const AngularPoint& p, PolarConvention conv);

/// Unit position vector for `p`.
Eigen::Vector3d unit_radial(const AngularPoint& p,
                            PolarConvention conv = PolarConvention::Colatitude);

struct SphericalIndex {
  int l = 0;
  int m = 0;
  bool valid() const { return l >= 0 && std::abs(m) <= l; }
};

enum class VshKind { Upsilon, Psi, Phi };

inline double l_tilde(int l) { return std::sqrt(double(l) * (l + 1)); }

/// Tensor-product quadrature on S^2: Gauss-Legendre in cos(theta) times a
/// uniform periodic rule in phi.  gauss(L) integrates products of two scalar
/// harmonics of degree <= L exactly.  Nodes use the colatitude convention.
struct AngularQuadrature {
  std::vector<AngularPoint> nodes;
  Eigen::ArrayXd weights;  // steradians, sum = 4*pi
  int order = 0;           // the L it was built for
  int n_theta = 0;
  int n_phi = 0;

  static AngularQuadrature gauss(int order);
};

/// Theta-dependent parts of all harmonics up to degree l_max at one point:
/// S(l,m) is the colatitude factor of Y_lm (Condon-Shortley phase included),
/// dS its theta derivative and msin the pole-safe value of m*S/sin(theta).
/// Stored for m >= 0; use the (-1)^m mirror for m < 0.
struct LegendreTable {
  int l_max = 0;
  Eigen::ArrayXXd S, dS, msin;  // (l_max+1) x (l_max+1), column m

  static LegendreTable build(int l_max, double theta);

  double s(int l, int m) const;
  double ds(int l, int m) const;
  double m_over_sin(int l, int m) const;  // value of m*S/sin for signed m
};

Complex eval_ylm(const SphericalIndex& idx, const AngularPoint& p,
                 PolarConvention conv = PolarConvention::Colatitude);

/// Cartesian components of Upsilon/Psi/Phi_lm at a point.
Eigen::Vector3cd eval_vsh(VshKind kind, const SphericalIndex& idx, const AngularPoint& p,
                          PolarConvention conv = PolarConvention::Colatitude);

/// Coefficients of Delta_Omega Z_lm over (Upsilon, Psi, Phi)_lm.
std::array<double, 3> angular_laplacian_action(VshKind kind, const SphericalIndex& idx);

/// The full 3x3 mixing matrix of Delta_Omega at fixed (l, m); symmetric.
Eigen::Matrix3d angular_mixing_matrix(int l);

/// Enumeration of the VSH basis up to l_max (Upsilon from l = 0, Psi and Phi
/// from l = 1), optionally restricted to m >= 0.
std::vector<std::pair<VshKind, SphericalIndex>> vsh_basis(int l_max,
                                                          bool include_negative_m = true);

/// Gram matrix of the (kind, l, m) basis under `quad`.
Eigen::MatrixXcd vsh_gram(int l_max, const AngularQuadrature& quad,
                          bool include_negative_m = true);

}  // namespace tfh::sphere
