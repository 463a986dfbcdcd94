#include "tfh/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfh::fock {

namespace {

constexpr double kDropTol = 0.0;  // exact algebra; drop only literal zeros

void prune(ModeState& s) {
  for (auto it = s.poly.begin(); it != s.poly.end();) {
    if (std::abs(it->second) <= kDropTol)
      it = s.poly.erase(it);
    else
      ++it;
  }
}

void check_mode(const ModeSystem& sys, int i) {
  if (i < 0 || i >= sys.n_continuous())
    throw std::out_of_range("fock: ladder operators act on continuous modes only");
}

void check_degree(const ModeState& s) {
  if (s.degree() + 1 > kMaxDegree)
    throw std::length_error("fock: polynomial degree cap exceeded");
}

/// Multiply by the variable v.
ModeState mul_var(const ModeState& s, int v) {
  ModeState out;
  for (const auto& [mono, c] : s.poly) {
    ModeState::Monomial m = mono;
    m[v] += 1;
    out.poly[m] += c;
  }
  return out;
}

/// d/du_v acting on the polynomial factor alone.
ModeState diff_poly(const ModeState& s, int v) {
  ModeState out;
  for (const auto& [mono, c] : s.poly) {
    if (mono[v] == 0) continue;
    ModeState::Monomial m = mono;
    const int k = m[v];
    m[v] -= 1;
    out.poly[m] += double(k) * c;
  }
  prune(out);
  return out;
}

/// Gaussian log-derivative factor: d/du_v of the Gaussian brings down
/// (-lambda_v u_v) for continuous v and (i kappa_d u_v) for discrete v.
Complex gaussian_slope(const ModeSystem& sys, int v) {
  if (v < sys.n_continuous()) return Complex(-sys.lambdas[v], 0.0);
  return Complex(0.0, sys.discrete_kappas[v - sys.n_continuous()]);
}


}  // namespace

void ModeSystem::validate() const {
  if (n_modes() > kMaxModes) throw std::length_error("fock: mode cap exceeded");
  for (int i = 0; i < n_continuous(); ++i) {
    if (!(lambdas[i] > 0.0)) throw std::domain_error("fock: lambdas must be positive");
    for (int j = 0; j < i; ++j)
      if (lambdas[i] == lambdas[j])
        throw std::domain_error("fock: lambdas must be distinct");
  }
  for (double k : discrete_kappas)
    if (!(k < 0.0)) throw std::domain_error("fock: discrete kappa must be negative");
}

ModeSystem product_system(const std::vector<ModeSystem>& channels) {
  ModeSystem out;
  int nc = 0;
  for (const auto& ch : channels) nc += ch.n_continuous();
  out.lambdas.resize(nc);
  int at = 0;
  for (const auto& ch : channels) {
    for (int i = 0; i < ch.n_continuous(); ++i) out.lambdas[at++] = ch.lambdas[i];
    out.discrete_kappas.insert(out.discrete_kappas.end(), ch.discrete_kappas.begin(),
                               ch.discrete_kappas.end());
  }
  out.validate();
  return out;
}

ModeState ModeState::vacuum(const ModeSystem& sys) {
  ModeState s;
  s.poly[Monomial(static_cast<std::size_t>(sys.n_modes()), 0)] = 1.0;
  return s;
}

bool ModeState::is_zero(double tol) const {
  for (const auto& [m, c] : poly)
    if (std::abs(c) > tol) return false;
  return true;
}

int ModeState::degree() const {
  int d = 0;
  for (const auto& [m, c] : poly) {
    int t = 0;
    for (auto e : m) t += e;
    d = std::max(d, t);
  }
  return d;
}

double ModeState::norm_inf() const {
  double v = 0.0;
  for (const auto& [m, c] : poly) v = std::max(v, std::abs(c));
  return v;
}

ModeState vacuum_state(const ModeSystem& sys) {
  sys.validate();
  return ModeState::vacuum(sys);
}

ModeState apply_create(const ModeSystem& sys, int i, const ModeState& s) {
  check_mode(sys, i);
  check_degree(s);
  // (lambda u - d/du)(p G) = (2 lambda u p - p') G
  ModeState out = mul_var(s, i);
  out = scale(out, 2.0 * sys.lambdas[i]);
  out = add(out, scale(diff_poly(s, i), -1.0));
  prune(out);
  return out;
}

ModeState apply_annihilate(const ModeSystem& sys, int i, const ModeState& s) {
  check_mode(sys, i);
  // (lambda u + d/du)(p G) = p' G
  return diff_poly(s, i);
}

ModeState apply_hamiltonian(const ModeSystem& sys, const ModeState& s) {
  sys.validate();
  ModeState out;
  for (int v = 0; v < sys.n_modes(); ++v) {
    // -d^2/du_v^2 + (potential), with potential lambda^2 u^2 (continuous) or
    // -kappa^2 u^2 (discrete); both equal minus the squared Gaussian slope,
    // so the potential cancels against the slope^2 term of the second
    // derivative and the mode contributes
    //   [-p'' - 2 slope u p' - slope p] G.
    const Complex slope = gaussian_slope(sys, v);
    ModeState d2 = diff_poly(diff_poly(s, v), v);
    ModeState ud = mul_var(diff_poly(s, v), v);
    out = add(out, scale(d2, -1.0));
    out = add(out, scale(ud, -2.0 * slope));
    out = add(out, scale(s, -slope));
  }
  prune(out);
  return out;
}

bool FockCoefficients::is_symmetric() const {
  for (const auto& [key, c] : entries)
    if (!std::is_sorted(key.begin(), key.end())) return false;
  return true;
}

ModeState build_n_particle(const ModeSystem& sys, const FockCoefficients& sigma,
                           bool* symmetrized) {
  sys.validate();
  if (symmetrized) *symmetrized = !sigma.is_symmetric();
  // Fold non-sorted keys onto their sorted representative.
  std::map<std::vector<int>, Complex> folded;
  for (const auto& [key, c] : sigma.entries) {
    if (static_cast<int>(key.size()) != sigma.n)
      throw std::invalid_argument("build_n_particle: key length != n");
    std::vector<int> k = key;
    std::sort(k.begin(), k.end());
    folded[k] += c;
  }
  ModeState out;
  const ModeState vac = ModeState::vacuum(sys);
  for (const auto& [key, c] : folded) {
    ModeState s = vac;
    for (int idx : key) s = apply_create(sys, idx, s);
    out = add(out, scale(s, c));
  }
  prune(out);
  return out;
}

EigenCheck eigen_check(const ModeSystem& sys, const ModeState& s, double tol) {
  EigenCheck out;
  if (s.is_zero()) return out;
  const ModeState hs = apply_hamiltonian(sys, s);
  // Ratio from the largest coefficient of s, then verify H s == ratio * s.
  const double scale_s = s.norm_inf();
  Complex ratio{};
  for (const auto& [m, c] : s.poly) {
    if (std::abs(c) == scale_s) {
      auto it = hs.poly.find(m);
      ratio = (it == hs.poly.end()) ? Complex{} : it->second / c;
      break;
    }
  }
  ModeState resid = add(hs, scale(s, -ratio));
  const double hnorm = std::max(hs.norm_inf(), scale_s);
  out.is_eigen = resid.norm_inf() <= tol * (hnorm + 1e-300);
  out.eigenvalue = out.is_eigen ? ratio : Complex{};
  return out;
}

ModeState add(const ModeState& a, const ModeState& b) {
  ModeState out = a;
  for (const auto& [m, c] : b.poly) out.poly[m] += c;
  prune(out);
  return out;
}

ModeState scale(const ModeState& a, Complex c) {
  ModeState out = a;
  for (auto& [m, v] : out.poly) v *= c;
  return out;
}

}  // namespace tfh::fock
