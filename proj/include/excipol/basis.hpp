#pragma once

#include <vector>

#include "excipol/system.hpp"

// Field-free exciton and biexciton eigenbases of the finite chain / square well:
// standing-wave mode shapes, cosine dispersions, and photon-coupling amplitudes.
namespace excipol::basis {

// chi_{nk} = sqrt(2/(N+1)) sin(pi n k/(N+1)); rows/columns form an orthonormal
// N x N transform between sites and modes.
double mode_shape(int n, int k, int n_sites);

// E_k = eps - 2w cos(pi k/(N+1)), evaluated as eps0 + 4w sin^2(pi k/(2(N+1)))
// so the confinement offset above the band bottom survives at large N.
double exciton_energy_1d(int k, const SystemParams& params);

// Offset of mode k above the band bottom, 4w sin^2(pi k/(2(N+1))).
double exciton_offset_1d(int k, int n_sites, double hop_w);

// E_{kx,ky} = eps - 2w cos(pi kx/(Nx+1)) - 2w cos(pi ky/(Ny+1)).
double exciton_energy_2d(int kx, int ky, const SystemParams& params);

// gamma_k = sum_n chi_{nk}: zero for even k, sqrt(2/(N+1)) cot(pi k/(2(N+1)))
// for odd k. Oscillator strength f_k = gamma_k^2 obeys sum_k f_k = N.
double oscillator_amplitude_1d(int k, int n_sites);

// Exact separable product gamma_{kx} * gamma_{ky}; 2D sum rule Nx*Ny is exact.
double oscillator_amplitude_2d(int kx, int ky, int nx, int ny);

// Large-N closed form 4 sqrt((1-(-1)^kx)(1-(-1)^ky)(Nx+1)(Ny+1)) / (pi^2 kx ky),
// kept as a diagnostic; the exact product above is what enters the solver.
double oscillator_amplitude_2d_asymptotic(int kx, int ky, int nx, int ny);

// E_{k1,k2} = 2 eps - 2w [cos(pi k1/(N+1)) + cos(pi k2/(N+1))], k1 < k2.
double biexciton_energy(int k1, int k2, const SystemParams& params);

inline long biexciton_count(long n_sites) { return n_sites * (n_sites - 1) / 2; }

// Antisymmetrized pair wave function, listed over site pairs n1 < n2 in
// lexicographic order; unit norm, distinct (k1,k2) orthogonal.
struct PairAmplitude {
  int n1, n2;
  double value;
};
std::vector<PairAmplitude> biexciton_coefficients(int k1, int k2, int n_sites);

// Collective symmetric state (1/sqrt(N)) R^+ |0> expanded over odd-k modes
// with coefficients gamma_k / sqrt(N). Its site image is uniform 1/sqrt(N).
struct ModeAmplitude {
  int k;
  double value;
};
std::vector<ModeAmplitude> collective_state_1d(int n_sites);

// m_eff = hbar^2/(2 w d^2). Reporting quantity only; d never enters dynamics.
double effective_mass(double hop_w, double lattice_spacing);

} // namespace excipol::basis
