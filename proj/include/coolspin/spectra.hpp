#pragma once

#include <string>
#include <vector>

#include "coolspin/spin_core.hpp"

namespace coolspin {

struct SpectralLine {
  double freq_hz = 0.0;    // offset from the observed spin's Larmor frequency
  double amplitude = 0.0;  // thermal state gives 1 on every line
  // Basis bits of the spectator spins (ascending spin index, observed spin
  // omitted), e.g. "01".
  std::string spectators;
};

struct Spectrum {
  int spin = 0;
  std::vector<SpectralLine> lines;  // ascending frequency
};

// First-order multiplet of spin j. A spectator k in |0> (m = +1/2) shifts the
// line by -J_jk / 2, so the transition frequency is nu_j - sum_k J_jk m_k.
// Lines are sorted by ascending frequency; ties keep spectator order.
std::vector<SpectralLine> line_frequencies(const SpinSystem& sys, int j);

// Absorption-mode readout after an ideal 90 degree pulse on spin j: each line
// carries the population difference pops(j = 0, s) - pops(j = 1, s).
Spectrum readout(const PopulationState& state, const SpinSystem& sys, int j);
// Dense input must be diagonal within tol.
Spectrum readout(const DenseState& state, const SpinSystem& sys, int j, double tol = 1e-10);

// Ratio of mean line amplitudes.
double mean_enhancement(const Spectrum& after, const Spectrum& before);

// "freq_hz,amplitude" header then one row per line, 12 significant digits.
std::string spectrum_csv(const Spectrum& s);

}  // namespace coolspin
