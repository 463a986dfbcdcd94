#include "tfh/cli.hpp"

#include "tfh/extension.hpp"
#include "tfh/fieldops.hpp"
#include "tfh/fock.hpp"
#include "tfh/numeric.hpp"
#include "tfh/quadform.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace tfh::cli {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

radial::GridPtr make_grid(const RunConfig& cfg) {
  return radial::RadialGrid::make(cfg.grid.nodes, cfg.grid.r_max, cfg.grid.r_first,
                                  cfg.grid.growth);
}

/// Central finite-difference angular Laplacian on sampled evaluations;
/// the independent check against the closed-form mixing coefficients.
Eigen::Vector3cd fd_angular_laplacian(sphere::VshKind kind, const sphere::SphericalIndex& idx,
                                      const sphere::AngularPoint& p) {
  const double h = 0.02;
  static const double c1[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  static const double c2[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18,
                               3.0 / 2,  -3.0 / 20, 1.0 / 90};
  Eigen::Vector3cd dth = Eigen::Vector3cd::Zero(), dth2 = Eigen::Vector3cd::Zero(),
                   dph2 = Eigen::Vector3cd::Zero();
  for (int k = -3; k <= 3; ++k) {
    const Eigen::Vector3cd ft = sphere::eval_vsh(kind, idx, {p.psi + k * h, p.phi});
    const Eigen::Vector3cd fp = sphere::eval_vsh(kind, idx, {p.psi, p.phi + k * h});
    dth += c1[k + 3] * ft;
    dth2 += c2[k + 3] * ft;
    dph2 += c2[k + 3] * fp;
  }
  dth /= h;
  dth2 /= h * h;
  dph2 /= h * h;
  const double st = std::sin(p.psi), ct = std::cos(p.psi);
  return -(dth2 + (ct / st) * dth + dph2 / (st * st));
}

}  // namespace

std::string kappa_tag(double kappa) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", kappa);
  return std::string(buf);
}

CheckReport run_vsh_check(const RunConfig& cfg) {
  CheckReport report;
  const int order = cfg.effective_quad_order();
  const auto quad = sphere::AngularQuadrature::gauss(order);

  report.add("quadrature_weight_sum_4pi", std::abs(quad.weights.sum() - 4.0 * M_PI), 1e-12);

  const Eigen::MatrixXcd gram = sphere::vsh_gram(cfg.l_max, quad);
  const Eigen::MatrixXcd dev =
      gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  report.add("gram_identity_max_deviation", dev.cwiseAbs().maxCoeff(), cfg.tolerances.gram);

  // Laplacian mixing against finite differences at generic points.
  double lap_dev = 0.0;
  const sphere::AngularPoint probe{1.1, 0.7};
  for (int l = 1; l <= std::min(cfg.l_max, 4); ++l) {
    for (int m = -l; m <= l; ++m) {
      const sphere::SphericalIndex idx{l, m};
      for (sphere::VshKind kind :
           {sphere::VshKind::Upsilon, sphere::VshKind::Psi, sphere::VshKind::Phi}) {
        const auto coef = sphere::angular_laplacian_action(kind, idx);
        const Eigen::Vector3cd want =
            coef[0] * sphere::eval_vsh(sphere::VshKind::Upsilon, idx, probe) +
            coef[1] * sphere::eval_vsh(sphere::VshKind::Psi, idx, probe) +
            coef[2] * sphere::eval_vsh(sphere::VshKind::Phi, idx, probe);
        const Eigen::Vector3cd got = fd_angular_laplacian(kind, idx, probe);
        lap_dev = std::max(lap_dev, (want - got).cwiseAbs().maxCoeff());
      }
    }
  }
  report.add("laplacian_mixing_fd_deviation", lap_dev, cfg.tolerances.laplacian);

  // Pointwise tangentiality of Psi and Phi, and |Upsilon| = |Y|.
  double tang = 0.0, radmag = 0.0;
  for (int a = 0; a < static_cast<int>(quad.nodes.size()); a += 7) {
    const auto& p = quad.nodes[a];
    const Eigen::Vector3d rhat = sphere::unit_radial(p);
    for (int l = 1; l <= cfg.l_max; ++l) {
      const sphere::SphericalIndex idx{l, std::min(l, 1)};
      tang = std::max(tang,
                      std::abs(sphere::eval_vsh(sphere::VshKind::Psi, idx, p)
                                   .dot(rhat.cast<sphere::Complex>())));
      tang = std::max(tang,
                      std::abs(sphere::eval_vsh(sphere::VshKind::Phi, idx, p)
                                   .dot(rhat.cast<sphere::Complex>())));
      radmag = std::max(
          radmag, std::abs(sphere::eval_vsh(sphere::VshKind::Upsilon, idx, p).norm() -
                           std::abs(sphere::eval_ylm(idx, p))));
    }
  }
  report.add("psi_phi_tangential", tang, 1e-13);
  report.add("upsilon_magnitude_matches_ylm", radmag, 1e-13);
  return report;
}

std::string run_spectrum(const RunConfig& cfg, double kappa) {
  const auto grid = make_grid(cfg);
  const auto fam = extension::make_spectral_family({kappa}, grid, cfg.spectral.lambda_count,
                                                   cfg.spectral.lambda_max);

  // Interior nodes for the residual norm: skip fit/closure zones.
  const int n = grid->size();
  const int lo = 8, hi = n - 8;

  auto eigen_residual = [&](const radial::RadialFunctionR& u, double expected) {
    const auto tu = extension::apply_t1_kappa(kappa, u);
    double num = 0.0, den = 0.0;
    for (int i = lo; i < hi; ++i) {
      num += std::norm(tu.values[i] - expected * u.values[i]);
      den += std::norm(expected * u.values[i]);
    }
    return std::sqrt(num / (den + 1e-300));
  };

  std::ostringstream csv;
  csv << "# spectrum for kappa = " << format_float(kappa) << "\n";
  csv << "type,lambda,zeta,eigen_residual\n";
  for (double lam = cfg.spectrum.lambda_start; lam <= cfg.spectrum.lambda_stop + 1e-12;
       lam += cfg.spectrum.lambda_step) {
    const auto p = extension::make_p_kappa(grid, lam, kappa);
    csv << "c," << format_float(lam) << ',' << format_float(extension::phase_shift(lam, kappa))
        << ',' << format_float(eigen_residual(p, lam * lam)) << "\n";
  }
  if (kappa < 0.0) {
    const auto q = extension::make_q(grid, kappa);
    const auto t1q = extension::make_t1_q(grid, kappa);
    const double qq = radial::inner_plain(q, t1q);
    csv << "d," << format_float(-kappa * kappa) << ',' << format_float(qq) << ','
        << format_float(eigen_residual(q, -kappa * kappa)) << "\n";
  }

  const std::string path = out_path(cfg, "spectrum_kappa_" + kappa_tag(kappa) + ".csv");
  atomic_write(path, csv.str());
  return path;
}

std::string run_qform(const RunConfig& cfg, const std::string& field_file, double kappa) {
  const auto grid = make_grid(cfg);
  const auto quad = sphere::AngularQuadrature::gauss(cfg.effective_quad_order());
  const auto field = fieldops::read_field(field_file, grid, quad, cfg.convention());

  quadform::ShrinkingBallOptions opts;
  opts.r0 = cfg.qform.r0;
  opts.levels = cfg.qform.levels;
  opts.tol = cfg.qform.richardson_tol;
  const auto res = quadform::form_q_kappa_limit(field, kappa, opts);

  std::ostringstream j;
  j << "{\n  \"schema_version\": 1,\n";
  j << "  \"kappa\": " << format_float(kappa) << ",\n";
  j << "  \"field_file\": \"" << field_file << "\",\n";
  j << "  \"value\": " << format_float(res.value) << ",\n";
  j << "  \"converged\": " << (res.converged ? "true" : "false") << ",\n";
  j << "  \"extrapolation_table\": [\n";
  for (std::size_t i = 0; i < res.extrapolation_table.size(); ++i) {
    j << "    [" << format_float(res.extrapolation_table[i].first) << ", "
      << format_float(res.extrapolation_table[i].second) << "]"
      << (i + 1 < res.extrapolation_table.size() ? ",\n" : "\n");
  }
  j << "  ]\n}\n";

  const std::string path = out_path(cfg, "qform_kappa_" + kappa_tag(kappa) + ".json");
  atomic_write(path, j.str());
  return path;
}

std::string run_decompose(const RunConfig& cfg, const std::string& field_file) {
  const auto grid = make_grid(cfg);
  const auto quad = sphere::AngularQuadrature::gauss(cfg.effective_quad_order());
  const auto field = fieldops::read_field(field_file, grid, quad, cfg.convention());

  const double resid = fieldops::divergence_residual(field);
  const auto tf = fieldops::decompose(field, cfg.l_max, /*require_transverse=*/false);

  std::ostringstream csv;
  csv << "# divergence_residual " << format_float(resid) << "\n";
  if (resid > cfg.tolerances.divergence)
    csv << "# warning: field is not transverse at tolerance "
        << format_float(cfg.tolerances.divergence) << "\n";
  csv << "l,m,channel,r,re,im\n";
  for (int l = 1; l <= cfg.l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int c = fieldops::TransverseField::channel_index(l, m);
      for (const char* ch : {"u", "w"}) {
        const radial::RadialFunctionC& f = (ch[0] == 'u') ? tf.u[c] : tf.w[c];
        for (int i = 0; i < grid->size(); ++i) {
          csv << l << ',' << m << ',' << ch << ',' << format_float(grid->r()[i]) << ','
              << format_float(f.values[i].real()) << ',' << format_float(f.values[i].imag())
              << "\n";
        }
      }
    }
  }
  const std::string path = out_path(cfg, "decompose.csv");
  atomic_write(path, csv.str());
  return path;
}

CheckReport run_fock_check(const RunConfig& cfg) {
  CheckReport report;
  fock::ModeSystem sys;
  const int nc = cfg.fock.mode_count;
  sys.lambdas.resize(nc);
  for (int i = 0; i < nc; ++i) sys.lambdas[i] = 0.5 + 0.5 * i;
  if (cfg.fock.discrete_kappa < 0.0) sys.discrete_kappas.push_back(cfg.fock.discrete_kappa);
  sys.validate();

  // Random polynomial states with deterministic coefficients.
  SplitMix64 rng(cfg.seed);
  auto random_state = [&](int degree) {
    fock::ModeState s = fock::ModeState::vacuum(sys);
    for (int t = 0; t < degree; ++t) {
      fock::ModeState term = fock::ModeState::vacuum(sys);
      for (int d = 0; d <= t; ++d) {
        const int v = static_cast<int>(rng.next() % sys.n_continuous());
        term = fock::apply_create(sys, v, term);
      }
      s = fock::add(s, fock::scale(term, {rng.uniform(-1, 1), rng.uniform(-1, 1)}));
    }
    return s;
  };

  // Commutator [a_i, b_j] = 2 lambda_i delta_ij.
  double comm_dev = 0.0;
  const fock::ModeState probe = random_state(cfg.fock.check_degree);
  for (int i = 0; i < std::min(3, nc); ++i) {
    for (int j = 0; j < std::min(3, nc); ++j) {
      const auto ab = fock::apply_annihilate(sys, i, fock::apply_create(sys, j, probe));
      const auto ba = fock::apply_create(sys, j, fock::apply_annihilate(sys, i, probe));
      const double want = (i == j) ? 2.0 * sys.lambdas[i] : 0.0;
      const auto resid = fock::add(fock::add(ab, fock::scale(ba, -1.0)),
                                   fock::scale(probe, -want));
      comm_dev = std::max(comm_dev, resid.norm_inf() / (probe.norm_inf() + 1e-300));
    }
  }
  report.add("commutator_a_b", comm_dev, cfg.tolerances.fock);

  // Vacuum eigenvalue sum(lambda) - i sum(kappa_d).
  const auto vac = fock::vacuum_state(sys);
  const auto vc = fock::eigen_check(sys, vac);
  fock::Complex want_vac(sys.lambdas.sum(), 0.0);
  for (double k : sys.discrete_kappas) want_vac += fock::Complex(0.0, -k);
  report.add("vacuum_is_eigenstate", vc.is_eigen ? 0.0 : 1.0, 0.5);
  report.add("vacuum_eigenvalue", std::abs(vc.eigenvalue - want_vac), cfg.tolerances.fock);

  // Ladder offsets: +2 lambda_i per created particle.
  double ladder_dev = 0.0;
  for (int i = 0; i < std::min(4, nc); ++i) {
    const auto one = fock::apply_create(sys, i, vac);
    const auto ec = fock::eigen_check(sys, one);
    ladder_dev = std::max(
        ladder_dev, std::abs(ec.eigenvalue - want_vac - fock::Complex(2.0 * sys.lambdas[i], 0)));
    if (!ec.is_eigen) ladder_dev = 1.0;
  }
  report.add("ladder_offsets", ladder_dev, cfg.tolerances.fock);

  // Annihilator kills the vacuum.
  double ann = 0.0;
  for (int i = 0; i < nc; ++i)
    ann = std::max(ann, fock::apply_annihilate(sys, i, vac).norm_inf());
  report.add("annihilate_vacuum", ann, 0.0);

  // Discrete-mode eigenvalue contribution -i kappa.
  if (sys.has_discrete()) {
    fock::ModeSystem dsys;
    dsys.discrete_kappas.push_back(cfg.fock.discrete_kappa);
    const auto dvac = fock::vacuum_state(dsys);
    const auto dc = fock::eigen_check(dsys, dvac);
    report.add("discrete_eigenvalue",
               std::abs(dc.eigenvalue - fock::Complex(0.0, -cfg.fock.discrete_kappa)),
               cfg.tolerances.fock);
  }
  return report;
}

std::string run_make_field(const RunConfig& cfg, const std::string& kind,
                           const std::string& out_file) {
  const auto grid = make_grid(cfg);
  const auto quad = sphere::AngularQuadrature::gauss(cfg.effective_quad_order());

  fieldops::SampledVectorField field;
  if (kind == "regular" || kind == "singular") {
    const auto profile =
        (kind == "regular")
            ? radial::from_function(
                  grid, [](double r) { return r * r * std::exp(-r); }, {0.0, 0.0, 2.0},
                  radial::DecayClass::Exponential)
            : radial::from_function(
                  grid, [](double r) { return r * std::exp(-r); }, {0.0, 1.0, -2.0},
                  radial::DecayClass::Exponential);
    field = fieldops::make_singular_test_field(grid, quad, {0.0, 1.0, 0.0}, profile);
    if (kind == "regular") {
      // add a w-channel so both sectors are exercised
      fieldops::TransverseField tf = fieldops::decompose(field, 1, false);
      tf.w[fieldops::TransverseField::channel_index(1, 0)] = radial::to_complex(
          radial::from_function(grid, [](double r) { return 0.5 * r * r * std::exp(-r); },
                                {0.0, 0.0, 1.0}, radial::DecayClass::Exponential));
      field = fieldops::reconstruct(tf, quad);
    }
  } else if (kind == "longitudinal") {
    fieldops::LongitudinalField lf = fieldops::LongitudinalField::zero(grid, 1);
    lf.v[fieldops::LongitudinalField::channel_index(1, 0)] = radial::to_complex(
        radial::from_function(grid, [](double r) { return r * r * std::exp(-r); },
                              {0.0, 0.0, 2.0}, radial::DecayClass::Exponential));
    field = fieldops::sample_longitudinal(lf, quad);
  } else {
    throw std::invalid_argument("make-field: kind must be regular, singular or longitudinal");
  }
  fieldops::write_field(out_file, field, sphere::PolarConvention::Colatitude);
  return out_file;
}

}  // namespace tfh::cli
