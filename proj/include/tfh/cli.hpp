#pragma once

#include "tfh/config.hpp"
#include "tfh/report.hpp"

#include <string>
#include <vector>

namespace tfh::cli {

/// Exit codes shared by every command: 0 all checks pass, 1 checks failed,
/// 2 usage or IO error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Sphere-module invariants: Gram identity, Laplacian mixing, tangentiality.
CheckReport run_vsh_check(const RunConfig& cfg);

/// Writes spectrum_kappa_<k>.csv: continuum rows (lambda, zeta, residual) and
/// for kappa < 0 the discrete row (-kappa^2, <q,q>_1, residual).
std::string run_spectrum(const RunConfig& cfg, double kappa);

/// Writes qform_kappa_<k>.json for a field file.
std::string run_qform(const RunConfig& cfg, const std::string& field_file, double kappa);

/// Writes decompose.csv: (l, m, channel, r, re, im) plus the divergence
/// residual as a header comment.
std::string run_decompose(const RunConfig& cfg, const std::string& field_file);

/// Fock-algebra invariants: commutators, ladder offsets, vacuum eigenvalues.
CheckReport run_fock_check(const RunConfig& cfg);

/// Sample field generator: kind in {regular, singular, longitudinal}.
std::string run_make_field(const RunConfig& cfg, const std::string& kind,
                           const std::string& out_file);

std::string kappa_tag(double kappa);

}  // namespace tfh::cli
