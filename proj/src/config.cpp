#include "tfh/config.hpp"

#include "tfh/report.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tfh::cli {

using nlohmann::json;

namespace {

template <class T>
void get_if_present(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

sphere::PolarConvention RunConfig::convention() const {
  if (polar_convention == "colatitude") return sphere::PolarConvention::Colatitude;
  if (polar_convention == "paper_latitude") return sphere::PolarConvention::PaperLatitude;
  throw std::invalid_argument("config: polar_convention must be colatitude or paper_latitude");
}

RunConfig default_config() { return RunConfig{}; }

static json to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = 1;
  j["grid"] = {{"nodes", c.grid.nodes},
               {"r_max", c.grid.r_max},
               {"r_first", c.grid.r_first},
               {"growth", c.grid.growth}};
  j["l_max"] = c.l_max;
  j["quad_order"] = c.quad_order;
  j["polar_convention"] = c.polar_convention;
  j["kappas"] = c.kappas;
  j["spectral"] = {{"lambda_count", c.spectral.lambda_count},
                   {"lambda_max", c.spectral.lambda_max}};
  j["spectrum"] = {{"lambda_start", c.spectrum.lambda_start},
                   {"lambda_step", c.spectrum.lambda_step},
                   {"lambda_stop", c.spectrum.lambda_stop}};
  j["qform"] = {{"r0", c.qform.r0},
                {"levels", c.qform.levels},
                {"richardson_tol", c.qform.richardson_tol},
                {"sqrt_window_frac", c.qform.sqrt_window_frac}};
  j["fock"] = {{"mode_count", c.fock.mode_count},
               {"check_degree", c.fock.check_degree},
               {"discrete_kappa", c.fock.discrete_kappa}};
  j["tolerances"] = {{"gram", c.tolerances.gram},
                     {"laplacian", c.tolerances.laplacian},
                     {"eigen_residual", c.tolerances.eigen_residual},
                     {"boundary", c.tolerances.boundary},
                     {"divergence", c.tolerances.divergence},
                     {"fock", c.tolerances.fock}};
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j = json::parse(in);
  RunConfig c;
  if (j.contains("grid")) {
    const json& g = j["grid"];
    get_if_present(g, "nodes", c.grid.nodes);
    get_if_present(g, "r_max", c.grid.r_max);
    get_if_present(g, "r_first", c.grid.r_first);
    get_if_present(g, "growth", c.grid.growth);
  }
  get_if_present(j, "l_max", c.l_max);
  get_if_present(j, "quad_order", c.quad_order);
  get_if_present(j, "polar_convention", c.polar_convention);
  get_if_present(j, "kappas", c.kappas);
  if (j.contains("spectral")) {
    const json& s = j["spectral"];
    get_if_present(s, "lambda_count", c.spectral.lambda_count);
    get_if_present(s, "lambda_max", c.spectral.lambda_max);
  }
  if (j.contains("spectrum")) {
    const json& s = j["spectrum"];
    get_if_present(s, "lambda_start", c.spectrum.lambda_start);
    get_if_present(s, "lambda_step", c.spectrum.lambda_step);
    get_if_present(s, "lambda_stop", c.spectrum.lambda_stop);
  }
  if (j.contains("qform")) {
    const json& q = j["qform"];
    get_if_present(q, "r0", c.qform.r0);
    get_if_present(q, "levels", c.qform.levels);
    get_if_present(q, "richardson_tol", c.qform.richardson_tol);
    get_if_present(q, "sqrt_window_frac", c.qform.sqrt_window_frac);
  }
  if (j.contains("fock")) {
    const json& f = j["fock"];
    get_if_present(f, "mode_count", c.fock.mode_count);
    get_if_present(f, "check_degree", c.fock.check_degree);
    get_if_present(f, "discrete_kappa", c.fock.discrete_kappa);
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    get_if_present(t, "gram", c.tolerances.gram);
    get_if_present(t, "laplacian", c.tolerances.laplacian);
    get_if_present(t, "eigen_residual", c.tolerances.eigen_residual);
    get_if_present(t, "boundary", c.tolerances.boundary);
    get_if_present(t, "divergence", c.tolerances.divergence);
    get_if_present(t, "fock", c.tolerances.fock);
  }
  get_if_present(j, "seed", c.seed);
  get_if_present(j, "out_dir", c.out_dir);
  (void)c.convention();  // validate
  return c;
}

std::string dump_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed for " + path);
}

std::string report_to_json(const CheckReport& report) {
  json j;
  j["schema_version"] = report.schema_version;
  j["pass"] = report.pass();
  j["checks"] = json::array();
  for (const auto& c : report.checks)
    j["checks"].push_back(
        {{"check", c.check}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  return j.dump(2) + "\n";
}

}  // namespace tfh::cli
