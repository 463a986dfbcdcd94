#pragma once

#include "tfh/radial.hpp"
#include "tfh/sphere.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace tfh::fieldops {

using radial::Complex;
using radial::GridPtr;
using radial::RadialFunctionC;
using radial::RadialFunctionR;

/// Cartesian 3-vector samples on the product grid RadialGrid x AngularQuadrature,
/// stored row (ir * n_ang + ia).
struct SampledVectorField {
  GridPtr grid;
  sphere::AngularQuadrature quad;
  Eigen::MatrixX3cd values;
  bool singular = false;

  int n_ang() const { return static_cast<int>(quad.nodes.size()); }
  Eigen::Index index(int ir, int ia) const {
    return static_cast<Eigen::Index>(ir) * n_ang() + ia;
  }
};

/// Divergence-free field in the (u_lm, w_lm) parametrisation; channels run
/// over 1 <= l <= l_max, |m| <= l.
struct TransverseField {
  GridPtr grid;
  int l_max = 0;
  std::vector<RadialFunctionC> u, w;

  static int channel_count(int l_max) { return (l_max + 1) * (l_max + 1) - 1; }
  static int channel_index(int l, int m) { return l * l + l + m - 1; }
  static TransverseField zero(GridPtr grid, int l_max);
};

/// Gradient field of a scalar potential sum_{l,m} v_lm(r) Y_lm; channels run
/// over 0 <= l <= l_max.
struct LongitudinalField {
  GridPtr grid;
  int l_max = 0;
  std::vector<RadialFunctionC> v;

  static int channel_count(int l_max) { return (l_max + 1) * (l_max + 1); }
  static int channel_index(int l, int m) { return l * l + l + m; }
  static LongitudinalField zero(GridPtr grid, int l_max);
};

/// A(x) = sum_lm ( l~ u_lm / r^2 Upsilon + u'_lm / r Psi + w_lm / r Phi ).
SampledVectorField reconstruct(const TransverseField& tf, const sphere::AngularQuadrature& quad);

/// Extraction of (u_lm, w_lm) from samples.  Checks transversality first
/// unless `require_transverse` is false (used by the projector).
TransverseField decompose(const SampledVectorField& f, int l_max,
                          bool require_transverse = true,
                          double divergence_tolerance = 1e-4);

/// Relative L2 size of div A over the grid interior (against |grad A|).
double divergence_residual(const SampledVectorField& f);

/// Orthogonal projection onto the transverse sector with l <= l_max.
SampledVectorField project_transverse(const SampledVectorField& f, int l_max);

/// A^L = grad sum v_lm Y_lm = sum ( v' Upsilon + (l~/r) v Psi ).
SampledVectorField sample_longitudinal(const LongitudinalField& lf,
                                       const sphere::AngularQuadrature& quad);

/// l = 1 u-channel field with coefficients c_m, m = -1, 0, 1.  A profile with
/// u'(0) != 0 produces the admissible A ~ A_0/|x| singularity.
SampledVectorField make_singular_test_field(GridPtr grid, const sphere::AngularQuadrature& quad,
                                            const std::array<Complex, 3>& c,
                                            const RadialFunctionR& profile);

/// Radial densities of the gradient integral: energy(ir) = r^2 * surface
/// integral of |grad A|^2, div_sq(ir) likewise for |div A|^2.
struct GradientDensities {
  Eigen::ArrayXd energy;
  Eigen::ArrayXd div_sq;
};
GradientDensities gradient_densities(const SampledVectorField& f);

/// r^2 * surface integral of |A|^2 at radial node ir.
double surface_mean_sq(const SampledVectorField& f, int ir);

/// Columnar text format  "# r psi phi A1 A2 A3"  (radians; real fields).
void write_field(const std::string& path, const SampledVectorField& f,
                 sphere::PolarConvention conv = sphere::PolarConvention::Colatitude);
SampledVectorField read_field(const std::string& path, GridPtr grid,
                              const sphere::AngularQuadrature& quad,
                              sphere::PolarConvention conv = sphere::PolarConvention::Colatitude);

}  // namespace tfh::fieldops
