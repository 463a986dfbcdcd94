#pragma once

#include "tfh/sphere.hpp"

#include <string>
#include <vector>

namespace tfh::cli {

/// One JSON document drives every command; print-config dumps the defaults.
struct RunConfig {
  struct Grid {
    int nodes = 2048;
    double r_max = 40.0;
    double r_first = 5e-4;
    double growth = 1.15;
  } grid;

  int l_max = 4;
  int quad_order = 0;  // 0 = derived from l_max
  std::string polar_convention = "colatitude";

  std::vector<double> kappas = {1.0, -1.0};

  struct Spectral {
    int lambda_count = 2048;
    double lambda_max = 0.0;  // 0 = pi / (4 h_bulk)
  } spectral;

  struct Spectrum {
    double lambda_start = 0.25;
    double lambda_step = 0.25;
    double lambda_stop = 8.0;
  } spectrum;

  struct QForm {
    double r0 = 0.128;
    int levels = 8;
    double richardson_tol = 1e-6;
    double sqrt_window_frac = 0.6;
  } qform;

  struct Fock {
    int mode_count = 8;
    int check_degree = 4;
    double discrete_kappa = -2.0;
  } fock;

  struct Tolerances {
    double gram = 1e-9;
    double laplacian = 1e-6;
    double eigen_residual = 1e-7;
    double boundary = 1e-6;
    double divergence = 1e-6;
    double fock = 1e-12;
  } tolerances;

  std::uint64_t seed = 20240601;
  std::string out_dir = "out";

  sphere::PolarConvention convention() const;
  int effective_quad_order() const { return quad_order > 0 ? quad_order : l_max + 2; }
};

RunConfig default_config();
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& cfg);

/// Write-to-temp-then-rename; every emitted file goes through this.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace tfh::cli
