#include "excipol/basis.hpp"

#include <cmath>
#include <numbers>

namespace excipol::basis {

namespace {
constexpr double kPi = std::numbers::pi;

void check_mode_index(int k, int n_sites, const char* what) {
  if (n_sites < 1) throw std::domain_error(std::string(what) + ": N must be >= 1");
  if (k < 1 || k > n_sites)
    throw std::domain_error(std::string(what) + ": mode index out of 1..N");
}
} // namespace

double mode_shape(int n, int k, int n_sites) {
  check_mode_index(k, n_sites, "mode_shape");
  if (n < 1 || n > n_sites) throw std::domain_error("mode_shape: site index out of 1..N");
  const double arg = kPi * static_cast<double>(n) * static_cast<double>(k) / (n_sites + 1.0);
  return std::sqrt(2.0 / (n_sites + 1.0)) * std::sin(arg);
}

double exciton_offset_1d(int k, int n_sites, double hop_w) {
  const double s = std::sin(kPi * k / (2.0 * (n_sites + 1.0)));
  return 4.0 * hop_w * s * s;
}

double exciton_energy_1d(int k, const SystemParams& params) {
  check_mode_index(k, params.n_atoms_x, "exciton_energy_1d");
  return (params.site_energy - 2.0 * params.hop_w) +
         exciton_offset_1d(k, params.n_atoms_x, params.hop_w);
}

double exciton_energy_2d(int kx, int ky, const SystemParams& params) {
  check_mode_index(kx, params.n_atoms_x, "exciton_energy_2d");
  check_mode_index(ky, params.n_atoms_y, "exciton_energy_2d");
  return (params.site_energy - 4.0 * params.hop_w) +
         exciton_offset_1d(kx, params.n_atoms_x, params.hop_w) +
         exciton_offset_1d(ky, params.n_atoms_y, params.hop_w);
}

double oscillator_amplitude_1d(int k, int n_sites) {
  check_mode_index(k, n_sites, "oscillator_amplitude_1d");
  if (k % 2 == 0) return 0.0;
  return std::sqrt(2.0 / (n_sites + 1.0)) / std::tan(kPi * k / (2.0 * (n_sites + 1.0)));
}

double oscillator_amplitude_2d(int kx, int ky, int nx, int ny) {
  return oscillator_amplitude_1d(kx, nx) * oscillator_amplitude_1d(ky, ny);
}

double oscillator_amplitude_2d_asymptotic(int kx, int ky, int nx, int ny) {
  check_mode_index(kx, nx, "oscillator_amplitude_2d_asymptotic");
  check_mode_index(ky, ny, "oscillator_amplitude_2d_asymptotic");
  if (kx % 2 == 0 || ky % 2 == 0) return 0.0;
  const double num = 4.0 * std::sqrt(4.0 * (nx + 1.0) * (ny + 1.0));
  return num / (kPi * kPi * kx * ky);
}

double biexciton_energy(int k1, int k2, const SystemParams& params) {
  const int n = params.n_atoms_x;
  check_mode_index(k1, n, "biexciton_energy");
  check_mode_index(k2, n, "biexciton_energy");
  if (k1 >= k2) throw std::domain_error("biexciton_energy: requires k1 < k2");
  return 2.0 * params.site_energy -
         2.0 * params.hop_w * (std::cos(kPi * k1 / (n + 1.0)) + std::cos(kPi * k2 / (n + 1.0)));
}

std::vector<PairAmplitude> biexciton_coefficients(int k1, int k2, int n_sites) {
  check_mode_index(k1, n_sites, "biexciton_coefficients");
  check_mode_index(k2, n_sites, "biexciton_coefficients");
  if (k1 >= k2) throw std::domain_error("biexciton_coefficients: requires k1 < k2");
  std::vector<PairAmplitude> out;
  out.reserve(static_cast<std::size_t>(biexciton_count(n_sites)));
  std::vector<double> c1(n_sites + 1), c2(n_sites + 1);
  for (int n = 1; n <= n_sites; ++n) {
    c1[n] = mode_shape(n, k1, n_sites);
    c2[n] = mode_shape(n, k2, n_sites);
  }
  for (int n1 = 1; n1 < n_sites; ++n1)
    for (int n2 = n1 + 1; n2 <= n_sites; ++n2)
      out.push_back({n1, n2, c1[n1] * c2[n2] - c2[n1] * c1[n2]});
  return out;
}

std::vector<ModeAmplitude> collective_state_1d(int n_sites) {
  if (n_sites < 1) throw std::domain_error("collective_state_1d: N must be >= 1");
  std::vector<ModeAmplitude> out;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_sites));
  for (int k = 1; k <= n_sites; k += 2)
    out.push_back({k, oscillator_amplitude_1d(k, n_sites) * inv_sqrt_n});
  return out;
}

double effective_mass(double hop_w, double lattice_spacing) {
  return kHbar * kHbar / (2.0 * hop_w * lattice_spacing * lattice_spacing);
}

} // namespace excipol::basis
