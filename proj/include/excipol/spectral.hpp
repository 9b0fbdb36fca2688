#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "excipol/system.hpp"

// Quasi-energy eigenproblem of one photon coupled to the active exciton modes:
// an arrowhead matrix whose secular equation  hbar*omega - lambda = g^2 G(lambda)
// has exactly one root per gap between distinct pole energies plus one root on
// each side. Degenerate pole groups are deflated into a single effective
// coupling; the leftover eigenvalues stay pinned at the pole ("silent levels").
namespace excipol::spectral {

struct Pole {
  double energy = 0.0;    // eps_j [eV], strictly ascending across the set
  double coupling = 0.0;  // gamma_eff = sqrt(sum of member gamma^2)
  int multiplicity = 1;   // number of merged degenerate modes
  // mode labels of the merged group: {k, 0} for a chain, {kx, ky} for a well
  std::vector<std::array<int, 2>> members;
};

struct ActivePoleSet {
  std::vector<Pole> poles;
  double shaft_energy = 0.0;   // hbar*omega [eV]
  double coupling_scale = 0.0; // g [eV]
  // sum over poles of coupling^2; equals N (chain) or Nx*Ny (well)
  double total_strength() const;
  double collective_coupling() const; // g * sqrt(total_strength)
  double span() const;                // max(pole range, |shaft - poles|)
};

// Active odd-k modes (chain) or (odd,odd) pairs grouped by energy (well).
// Groups merge energies equal to 1e-12 relative; gamma_eff conserves the
// coupling mass of each group.
ActivePoleSet build_active_poles(const SystemParams& params);

// G(lambda) = sum_j gamma_eff_j^2 / (eps_j - lambda); strictly increasing on
// every open interval between poles. Throws std::domain_error inside the
// guard band of a pole (1e3 * eps_machine * span), where the sum overflows.
double secular_g(double lambda, const ActivePoleSet& poles);

// One converged root, stored relative to its nearest pole so that
// eps_j - lambda keeps full relative precision however tightly the root
// hugs the pole. origin < 0 marks a root referenced to absolute zero
// (decoupled g = 0 shaft root).
struct Root {
  int origin = -1;      // index into poles, or -1 for absolute reference
  double offset = 0.0;  // lambda - poles[origin].energy
  double lambda = 0.0;  // combined value, for reporting
  double norm = 1.0;    // P_m = 1 + g^2 sum gamma^2/(eps - lambda)^2
  double weight = 1.0;  // b_m^2 = 1/P_m
};

struct SilentLevel {
  double energy = 0.0;
  int multiplicity = 0; // d_j - 1 copies pinned at a degenerate pole
};

enum class Branch { Lower, UpperStar, Background };

struct TwoLevelOverlay {
  double lower = 0.0, upper = 0.0;          // eV
  double weight_lower = 0.0, weight_upper = 0.0;
};

struct QuasiEnergySpectrum {
  std::vector<Root> roots;     // ascending lambda, size = n_distinct_poles + 1
  std::vector<SilentLevel> silent;
  std::vector<Branch> branch;  // per root; filled by identify_branches
  int lower_index = -1;        // root below the lowest pole
  int star_index = -1;         // max-weight root above the band bottom
  TwoLevelOverlay overlay;     // bosonic-ladder reference values
  double shaft_energy = 0.0;
  double coupling_scale = 0.0;

  // eps_j - lambda_m without cancellation, via the stored origin shift.
  double pole_minus_lambda(const ActivePoleSet& poles, std::size_t m, std::size_t j) const;
  // lambda_m - ref for phase arguments (ref is typically the lowest root).
  double lambda_rel(std::size_t m, double ref) const { return roots[m].lambda - ref; }
};

// All distinct roots of the secular equation, bracketed by interlacing,
// refined by bisection plus safeguarded Newton in the pole-shifted variable.
// g = 0 returns the decoupled spectrum with unit weight on the shaft.
QuasiEnergySpectrum solve_quasienergies(const ActivePoleSet& poles);

// Normalized eigenvector {1, g gamma_j/(eps_j - lambda_m)} / sqrt(P_m) in the
// deflated basis (photon component first). Throws for silent levels.
std::vector<double> eigenvector(const QuasiEnergySpectrum& spectrum,
                                const ActivePoleSet& poles, std::size_t m);

// b_m^2 per root; the initial state |1;0> projects on root m with P_m^{-1/2}.
std::vector<double> initial_weights(const QuasiEnergySpectrum& spectrum);

// Labels the lower branch and the dominant upper root lambda*, and fills the
// two-level polariton overlay (collective coupling g*sqrt(N)).
void identify_branches(QuasiEnergySpectrum& spectrum, const SystemParams& params);

} // namespace excipol::spectral
