#include "tfh/cli.hpp"
#include "tfh/config.hpp"
#include "tfh/report.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace tfh;

int emit_report(const cli::RunConfig& cfg, const std::string& name,
                const cli::CheckReport& report) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = (std::filesystem::path(cfg.out_dir) / name).string();
  cli::atomic_write(path, cli::report_to_json(report));
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.check << "  measured " << c.measured
              << "  tolerance " << c.tolerance << "\n";
  std::cout << "report written to " << path << "\n";
  return report.pass() ? cli::kExitPass : cli::kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tfh - spectral toolkit for transverse-field radial extensions"};
  app.require_subcommand(1);

  std::string config_file, out_dir, field_file, kind = "regular", out_file;
  std::vector<double> kappas;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON config file (defaults embedded)");
    cmd->add_option("--out", out_dir, "output directory");
  };

  CLI::App* c_print = app.add_subcommand("print-config", "dump the effective configuration");
  add_common(c_print);

  CLI::App* c_vsh = app.add_subcommand("vsh-check", "sphere-module invariant checks");
  add_common(c_vsh);

  CLI::App* c_spec = app.add_subcommand("spectrum", "phase shifts and eigen-residuals per kappa");
  add_common(c_spec);
  c_spec->add_option("--kappa", kappas, "extension parameter (repeatable)");

  CLI::App* c_qform = app.add_subcommand("qform", "extended quadratic form of a field file");
  add_common(c_qform);
  c_qform->add_option("--kappa", kappas, "extension parameter (repeatable)");
  c_qform->add_option("field", field_file, "field file (# r psi phi A1 A2 A3)")->required();

  CLI::App* c_dec = app.add_subcommand("decompose", "VSH channel extraction of a field file");
  add_common(c_dec);
  c_dec->add_option("field", field_file, "field file")->required();

  CLI::App* c_fock = app.add_subcommand("fock-check", "mode-algebra invariant checks");
  add_common(c_fock);

  CLI::App* c_make = app.add_subcommand("make-field", "write a sample field file");
  add_common(c_make);
  c_make->add_option("--kind", kind, "regular | singular | longitudinal");
  c_make->add_option("file", out_file, "output field file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  try {
    cli::RunConfig cfg =
        config_file.empty() ? cli::default_config() : cli::load_config(config_file);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    const std::vector<double> klist = kappas.empty() ? cfg.kappas : kappas;

    if (c_print->parsed()) {
      std::cout << cli::dump_config(cfg);
      return cli::kExitPass;
    }
    if (c_vsh->parsed()) return emit_report(cfg, "vsh_check.json", cli::run_vsh_check(cfg));
    if (c_spec->parsed()) {
      for (double k : klist) std::cout << cli::run_spectrum(cfg, k) << "\n";
      return cli::kExitPass;
    }
    if (c_qform->parsed()) {
      bool ok = true;
      for (double k : klist) {
        const std::string path = cli::run_qform(cfg, field_file, k);
        std::cout << path << "\n";
        // converged flag decides pass/fail
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        if (text.find("\"converged\": true") == std::string::npos) ok = false;
      }
      return ok ? cli::kExitPass : cli::kExitFail;
    }
    if (c_dec->parsed()) {
      std::cout << cli::run_decompose(cfg, field_file) << "\n";
      return cli::kExitPass;
    }
    if (c_fock->parsed()) return emit_report(cfg, "fock_check.json", cli::run_fock_check(cfg));
    if (c_make->parsed()) {
      std::cout << cli::run_make_field(cfg, kind, out_file) << "\n";
      return cli::kExitPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
