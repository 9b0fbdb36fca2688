#include "excipol/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "excipol/basis.hpp"
#include "excipol/refmodels.hpp"

namespace excipol::spectral {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct SecularEval {
  double value;      // h(tau) = (hw - e_origin - tau) - sum c_j/(d_j - tau)
  double derivative; // always negative between poles
};

// Secular function in the pole-shifted variable tau = lambda - e[origin].
// diffs[j] = e[j] - e[origin] is precomputed once per interval so that
// eps_j - lambda = diffs[j] - tau keeps full relative precision for roots
// arbitrarily close to their pole.
class ShiftedSecular {
 public:
  ShiftedSecular(const std::vector<double>& couplings2, const std::vector<double>& energies,
                 double shaft, int origin)
      : c2_(couplings2), shaft_minus_origin_(shaft - energies[origin]) {
    diffs_.resize(energies.size());
    for (std::size_t j = 0; j < energies.size(); ++j)
      diffs_[j] = energies[j] - energies[origin];
  }

  SecularEval operator()(double tau) const {
    double h = shaft_minus_origin_ - tau;
    double hp = -1.0;
    for (std::size_t j = 0; j < diffs_.size(); ++j) {
      const double r = diffs_[j] - tau;
      const double q = c2_[j] / r;
      h -= q;
      hp -= q / r;
    }
    return {h, hp};
  }

 private:
  const std::vector<double>& c2_;
  std::vector<double> diffs_;
  double shaft_minus_origin_;
};

// Root of h on [a, b] with h(a) > 0 > h(b). Bisection (geometric when the
// bracket spans decades in |tau|) down to 1e-3 relative width, then
// safeguarded Newton.
double refine_root(const ShiftedSecular& h, double a, double b, double tol_resid) {
  for (int it = 0; it < 220 && (b - a) > 1e-3 * std::max(std::abs(a), std::abs(b)); ++it) {
    double mid;
    if (a > 0.0 && b / a > 16.0)
      mid = std::sqrt(a * b);
    else if (b < 0.0 && a / b > 16.0)
      mid = -std::sqrt(a * b);
    else
      mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;
    if (h(mid).value > 0.0)
      a = mid;
    else
      b = mid;
  }

  double x = 0.5 * (a + b);
  for (int it = 0; it < 60; ++it) {
    const auto [val, der] = h(x);
    if (std::abs(val) <= tol_resid) return x;
    if (val > 0.0)
      a = x;
    else
      b = x;
    double next = x - val / der;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 2.0 * kEps * std::abs(x)) return next;
    if ((b - a) <= 4.0 * kEps * std::max(std::abs(a), std::abs(b))) return 0.5 * (a + b);
    x = next;
  }
  return x;
}

// Walks a bracket endpoint toward the pole at tau = 0 until h has the
// expected sign there (the root may sit within an ulp of the pole).
double approach_pole(const ShiftedSecular& h, double start, bool want_positive) {
  double s = start;
  for (int it = 0; it < 120; ++it) {
    const double v = h(s).value;
    if (want_positive ? (v > 0.0) : (v < 0.0)) return s;
    s *= 1e-3;
    if (std::abs(s) < 1e-300) return s;
  }
  return s;
}

QuasiEnergySpectrum decoupled_spectrum(const ActivePoleSet& poles) {
  QuasiEnergySpectrum s;
  s.shaft_energy = poles.shaft_energy;
  s.coupling_scale = poles.coupling_scale;
  for (std::size_t j = 0; j < poles.poles.size(); ++j) {
    Root r;
    r.origin = static_cast<int>(j);
    r.offset = 0.0;
    r.lambda = poles.poles[j].energy;
    r.norm = std::numeric_limits<double>::infinity();
    r.weight = 0.0;
    s.roots.push_back(r);
    if (poles.poles[j].multiplicity > 1)
      s.silent.push_back({poles.poles[j].energy, poles.poles[j].multiplicity - 1});
  }
  Root shaft;
  shaft.origin = -1;
  shaft.offset = shaft.lambda = poles.shaft_energy;
  shaft.norm = 1.0;
  shaft.weight = 1.0;
  s.roots.push_back(shaft);
  std::stable_sort(s.roots.begin(), s.roots.end(),
                   [](const Root& x, const Root& y) { return x.lambda < y.lambda; });
  s.branch.assign(s.roots.size(), Branch::Background);
  return s;
}

} // namespace

double ActivePoleSet::total_strength() const {
  double s = 0.0;
  for (const auto& p : poles) s += p.coupling * p.coupling;
  return s;
}

double ActivePoleSet::collective_coupling() const {
  return coupling_scale * std::sqrt(total_strength());
}

double ActivePoleSet::span() const {
  if (poles.empty()) return 1e-30;
  const double lo = std::min(poles.front().energy, shaft_energy);
  const double hi = std::max(poles.back().energy, shaft_energy);
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-24});
  return std::max(hi - lo, 1e-6 * scale);
}

ActivePoleSet build_active_poles(const SystemParams& params) {
  params.validate();
  ActivePoleSet set;
  set.shaft_energy = params.photon_energy;
  set.coupling_scale = params.coupling_g;

  if (params.geometry() == Geometry::Chain) {
    const int n = params.n_atoms_x;
    for (int k = 1; k <= n; k += 2) {
      Pole p;
      p.energy = basis::exciton_energy_1d(k, params);
      p.coupling = basis::oscillator_amplitude_1d(k, n);
      p.multiplicity = 1;
      p.members = {{k, 0}};
      set.poles.push_back(p);
    }
    return set;
  }

  struct Item {
    double energy;
    int kx, ky;
    double gamma;
  };
  std::vector<Item> items;
  for (int kx = 1; kx <= params.n_atoms_x; kx += 2)
    for (int ky = 1; ky <= params.n_atoms_y; ky += 2)
      items.push_back({basis::exciton_energy_2d(kx, ky, params), kx, ky,
                       basis::oscillator_amplitude_2d(kx, ky, params.n_atoms_x, params.n_atoms_y)});
  if (items.empty()) throw std::domain_error("build_active_poles: empty active set");
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.kx != b.kx) return a.kx < b.kx;
    return a.ky < b.ky;
  });
  double scale = 0.0;
  for (const auto& it : items) scale = std::max(scale, std::abs(it.energy));
  const double tol = 1e-12 * std::max(scale, 1e-24);

  for (const auto& it : items) {
    if (!set.poles.empty() && std::abs(it.energy - set.poles.back().energy) <= tol) {
      Pole& p = set.poles.back();
      p.coupling = std::sqrt(p.coupling * p.coupling + it.gamma * it.gamma);
      p.multiplicity += 1;
      p.members.push_back({it.kx, it.ky});
    } else {
      Pole p;
      p.energy = it.energy;
      p.coupling = std::abs(it.gamma);
      p.multiplicity = 1;
      p.members = {{it.kx, it.ky}};
      set.poles.push_back(p);
    }
  }
  return set;
}

double secular_g(double lambda, const ActivePoleSet& poles) {
  const double guard = 1e3 * kEps * poles.span();
  double g = 0.0;
  for (const auto& p : poles.poles) {
    const double d = p.energy - lambda;
    if (std::abs(d) < guard)
      throw std::domain_error("secular_g: lambda inside pole guard band");
    g += p.coupling * p.coupling / d;
  }
  return g;
}

QuasiEnergySpectrum solve_quasienergies(const ActivePoleSet& poles) {
  const std::size_t m = poles.poles.size();
  if (m == 0) throw std::domain_error("solve_quasienergies: empty pole set");

  const double g = poles.coupling_scale;
  if (g == 0.0) return decoupled_spectrum(poles);

  std::vector<double> e(m), c2(m);
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = poles.poles[j].energy;
    c2[j] = g * g * poles.poles[j].coupling * poles.poles[j].coupling;
  }
  const double hw = poles.shaft_energy;
  const double big_gamma = poles.collective_coupling();
  const double tol_resid = 1e-12 * std::max(big_gamma, poles.span());

  QuasiEnergySpectrum spec;
  spec.shaft_energy = hw;
  spec.coupling_scale = g;
  spec.roots.resize(m + 1);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(m + 1); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    int origin;
    double a, b;
    if (i == 0) {
      // below the lowest pole; lambda_min >= min(e0, hw) - g*Gamma
      origin = 0;
      ShiftedSecular h(c2, e, hw, origin);
      double pad = (e[0] - std::min(e[0], hw)) + 1.25 * big_gamma + 16.0 * kEps * poles.span();
      while (h(-pad).value <= 0.0) pad *= 2.0;
      a = -pad;
      b = approach_pole(h, -std::max(pad, std::abs(e[0])) * 1e-13, false);
      spec.roots[i].offset = refine_root(h, a, b, tol_resid);
    } else if (i == m) {
      origin = static_cast<int>(m - 1);
      ShiftedSecular h(c2, e, hw, origin);
      double pad = (std::max(e[m - 1], hw) - e[m - 1]) + 1.25 * big_gamma + 16.0 * kEps * poles.span();
      while (h(pad).value >= 0.0) pad *= 2.0;
      b = pad;
      a = approach_pole(h, std::max(pad, std::abs(e[m - 1])) * 1e-13, true);
      spec.roots[i].offset = refine_root(h, a, b, tol_resid);
    } else {
      const double gap = e[i] - e[i - 1];
      // decide which pole the root hugs from the sign at the gap midpoint
      ShiftedSecular h_left(c2, e, hw, static_cast<int>(i - 1));
      const bool right_half = h_left(0.5 * gap).value > 0.0;
      origin = static_cast<int>(right_half ? i : i - 1);
      ShiftedSecular h(c2, e, hw, origin);
      if (right_half) {
        a = -0.5 * gap;
        b = approach_pole(h, -gap * 1e-13, false);
      } else {
        a = approach_pole(h, gap * 1e-13, true);
        b = 0.5 * gap;
      }
      spec.roots[i].offset = refine_root(h, a, b, tol_resid);
    }

    Root& r = spec.roots[i];
    r.origin = origin;
    r.lambda = e[origin] + r.offset;
    double p = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = (e[j] - e[origin]) - r.offset;
      p += c2[j] / (d * d);
    }
    r.norm = p;
    r.weight = 1.0 / p;
  }

  for (std::size_t j = 0; j < m; ++j)
    if (poles.poles[j].multiplicity > 1)
      spec.silent.push_back({e[j], poles.poles[j].multiplicity - 1});
  spec.branch.assign(spec.roots.size(), Branch::Background);
  return spec;
}

double QuasiEnergySpectrum::pole_minus_lambda(const ActivePoleSet& poles, std::size_t m,
                                              std::size_t j) const {
  const Root& r = roots[m];
  if (r.origin < 0) return poles.poles[j].energy - r.lambda;
  return (poles.poles[j].energy - poles.poles[r.origin].energy) - r.offset;
}

std::vector<double> eigenvector(const QuasiEnergySpectrum& spectrum, const ActivePoleSet& poles,
                                std::size_t m) {
  const Root& r = spectrum.roots[m];
  const double g = poles.coupling_scale;
  const std::size_t n = poles.poles.size();
  std::vector<double> v(n + 1, 0.0);
  if (g == 0.0) {
    if (r.weight > 0.0) {
      v[0] = 1.0; // decoupled shaft state
    } else {
      for (std::size_t j = 0; j < n; ++j)
        if (poles.poles[j].energy == r.lambda) {
          v[j + 1] = 1.0;
          return v;
        }
    }
    return v;
  }
  if (r.origin >= 0 && r.offset == 0.0)
    throw std::domain_error("eigenvector: root coincides with a pole (silent level)");
  const double scale = 1.0 / std::sqrt(r.norm);
  v[0] = scale;
  for (std::size_t j = 0; j < n; ++j)
    v[j + 1] = scale * g * poles.poles[j].coupling / spectrum.pole_minus_lambda(poles, m, j);
  return v;
}

std::vector<double> initial_weights(const QuasiEnergySpectrum& spectrum) {
  std::vector<double> w(spectrum.roots.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = spectrum.roots[i].weight;
  return w;
}

void identify_branches(QuasiEnergySpectrum& spectrum, const SystemParams& params) {
  spectrum.branch.assign(spectrum.roots.size(), Branch::Background);
  if (spectrum.roots.empty()) return;
  spectrum.lower_index = 0;
  spectrum.branch[0] = Branch::Lower;

  const double eps0 = params.band_bottom();
  int star = -1;
  for (std::size_t i = 0; i < spectrum.roots.size(); ++i) {
    if (spectrum.roots[i].lambda <= eps0) continue;
    if (star < 0 || spectrum.roots[i].weight > spectrum.roots[star].weight)
      star = static_cast<int>(i);
  }
  spectrum.star_index = star;
  if (star >= 0 && star != spectrum.lower_index) spectrum.branch[star] = Branch::UpperStar;

  double strength = params.geometry() == Geometry::Chain
                        ? static_cast<double>(params.n_atoms_x)
                        : static_cast<double>(params.n_atoms_x) * params.n_atoms_y;
  const auto two_level = refmodels::two_level_polariton(
      params.photon_energy, eps0, params.coupling_g * std::sqrt(strength));
  spectrum.overlay.lower = two_level.lower;
  spectrum.overlay.upper = two_level.upper;
  spectrum.overlay.weight_lower = two_level.weight_lower;
  spectrum.overlay.weight_upper = two_level.weight_upper;
}

} // namespace excipol::spectral
