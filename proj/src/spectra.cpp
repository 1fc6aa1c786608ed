#include "coolspin/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "coolspin/error.hpp"

namespace coolspin {

namespace {

// Spectator configuration s (n - 1 bits, ascending spin order) and the
// observed spin's bit b combined into a full basis index.
std::size_t basis_index(std::size_t s, int n, int j, int b) {
  std::size_t idx = 0;
  int next = n - 2;  // most significant spectator bit first
  for (int k = 0; k < n; ++k) {
    int bit;
    if (k == j) {
      bit = b;
    } else {
      bit = static_cast<int>((s >> next) & 1u);
      --next;
    }
    if (bit) idx |= spin_mask(n, k);
  }
  return idx;
}

std::string spectator_label(std::size_t s, int n) {
  std::string out;
  for (int k = n - 2; k >= 0; --k) out.push_back(((s >> k) & 1u) ? '1' : '0');
  return out;
}

}  // namespace

std::vector<SpectralLine> line_frequencies(const SpinSystem& sys, int j) {
  sys.validate();
  const int n = sys.size();
  require(j >= 0 && j < n, "spectrum: spin index out of range");
  const std::size_t count = std::size_t{1} << (n - 1);
  std::vector<SpectralLine> lines(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t idx = basis_index(s, n, j, 0);
    double f = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double m = spin_bit(idx, n, k) ? -0.5 : 0.5;
      f -= sys.j_hz[j][k] * m;
    }
    lines[s] = SpectralLine{f + 0.0, 0.0, spectator_label(s, n)};
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& x, const auto& y) { return x.freq_hz < y.freq_hz; });
  return lines;
}

Spectrum readout(const PopulationState& state, const SpinSystem& sys, int j) {
  const int n = sys.size();
  require(state.num_spins() == n, "readout: state and spin system sizes differ");
  Spectrum spec;
  spec.spin = j;
  spec.lines = line_frequencies(sys, j);
  for (auto& line : spec.lines) {
    const std::size_t s = std::stoul(line.spectators.empty() ? "0" : line.spectators, nullptr, 2);
    line.amplitude = state[basis_index(s, n, j, 0)] - state[basis_index(s, n, j, 1)];
  }
  return spec;
}

Spectrum readout(const DenseState& state, const SpinSystem& sys, int j, double tol) {
  require(state.max_coherence() <= tol, "readout: state carries coherences");
  const auto diag = state.diagonal();
  return readout(PopulationState(state.num_spins(), {diag.data(), diag.data() + diag.size()}),
                 sys, j);
}

double mean_enhancement(const Spectrum& after, const Spectrum& before) {
  require(after.spin == before.spin, "mean_enhancement: spectra of different spins");
  require(after.lines.size() == before.lines.size() && !before.lines.empty(),
          "mean_enhancement: line counts differ");
  auto total = [](const Spectrum& s) {
    return std::accumulate(s.lines.begin(), s.lines.end(), 0.0,
                           [](double acc, const SpectralLine& l) { return acc + l.amplitude; });
  };
  const double ref = total(before);
  require(ref != 0.0, "mean_enhancement: reference signal is zero");
  return total(after) / ref;
}

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "freq_hz,amplitude\n";
  char buf[96];
  for (const auto& l : s.lines) {
    // +0.0 folds negative zero.
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", l.freq_hz + 0.0, l.amplitude + 0.0);
    out += buf;
  }
  return out;
}

}  // namespace coolspin
