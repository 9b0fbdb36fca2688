#pragma once

#include <stdexcept>
#include <string>

namespace excipol {

// Planck constant over 2*pi in eV*ns. Energies are eV, times ns, throughout.
inline constexpr double kHbar = 6.582119569e-7;

enum class Geometry { Chain, Well };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested problem size exceeds a documented desk-scale cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical parameters of the atom lattice and the cavity mode.
struct SystemParams {
  int n_atoms_x = 1;          // N for a chain, Nx for a well
  int n_atoms_y = 0;          // 0 selects the 1D chain
  double hop_w = 0.25;        // dipole-dipole transfer integral w [eV]
  double site_energy = 1.0;   // atomic excitation energy eps [eV]
  double coupling_g = 0.0;    // per-atom photon coupling g [eV]
  double photon_energy = 1.0; // hbar*omega [eV]

  static constexpr double hbar = kHbar;

  Geometry geometry() const { return n_atoms_y > 0 ? Geometry::Well : Geometry::Chain; }

  // Band bottom eps0 = eps - 2w (chain) or eps - 4w (well).
  double band_bottom() const {
    return site_energy - (geometry() == Geometry::Chain ? 2.0 : 4.0) * hop_w;
  }

  double detuning() const { return photon_energy - band_bottom(); }

  long total_sites() const {
    return geometry() == Geometry::Chain ? n_atoms_x
                                         : static_cast<long>(n_atoms_x) * n_atoms_y;
  }

  void validate() const {
    if (n_atoms_x < 1) throw ConfigError("n_atoms_x must be >= 1");
    if (n_atoms_y < 0) throw ConfigError("n_atoms_y must be >= 0");
    if (!(hop_w > 0.0)) throw ConfigError("hop_w must be positive");
    if (coupling_g < 0.0) throw ConfigError("coupling_g must be >= 0");
  }
};

} // namespace excipol
