#include "coolspin/error.hpp"
#include "coolspin/spectra.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace coolspin;
using doctest::Approx;

namespace {

std::vector<double> amplitudes(const Spectrum& s) {
  std::vector<double> out;
  for (const auto& l : s.lines) out.push_back(l.amplitude);
  return out;
}

std::vector<double> freqs(const Spectrum& s) {
  std::vector<double> out;
  for (const auto& l : s.lines) out.push_back(l.freq_hz);
  return out;
}

}  // namespace

TEST_CASE("thermal lines all have unit amplitude") {
  for (int n = 1; n <= 8; ++n) {
    auto sys = make_uncoupled_system(n, 1e-5);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) sys.j_hz[p][q] = sys.j_hz[q][p] = 10.0 * (p + 1) + q;
    for (int j = 0; j < n; ++j) {
      const auto s = readout(thermal_state(n), sys, j);
      CHECK(s.lines.size() == (std::size_t{1} << (n - 1)));
      for (double a : amplitudes(s)) CHECK(a == Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("boosted spectra of the three-spin molecule") {
  const auto sys = c2f3br_molecule();
  const PopulationState boosted(3, fixtures::kBoosted3);
  CHECK(amplitudes(readout(boosted, sys, 0)) == std::vector<double>{1, 2, 1, 2});
  CHECK(amplitudes(readout(boosted, sys, 1)) == std::vector<double>{0, 1, 0, 1});
  CHECK(amplitudes(readout(boosted, sys, 2)) == std::vector<double>{-1, 0, 0, 1});
  const auto th = readout(thermal_state(3), sys, 0);
  CHECK(mean_enhancement(readout(boosted, sys, 0), th) == Approx(1.5).epsilon(1e-15));
  CHECK(mean_enhancement(th, th) == 1.0);
  CHECK(mean_enhancement(readout(boosted, sys, 2), readout(thermal_state(3), sys, 2)) == 0.0);
}

TEST_CASE("multiplet positions") {
  const auto sys = c2f3br_molecule();
  const auto a = freqs(readout(thermal_state(3), sys, 0));
  const std::vector<double> want = {-98.55, -23.55, 23.55, 98.55};
  for (int i = 0; i < 4; ++i) CHECK(a[i] == Approx(want[i]).epsilon(1e-12));
  const double jab = -122.1, jbc = 53.8;
  std::vector<double> b_want = {(jab + jbc) / 2, (jab - jbc) / 2, -(jab + jbc) / 2, -(jab - jbc) / 2};
  std::sort(b_want.begin(), b_want.end());
  const auto b = freqs(readout(thermal_state(3), sys, 1));
  for (int i = 0; i < 4; ++i) CHECK(b[i] == Approx(b_want[i]).epsilon(1e-12));
  // symmetric about zero
  for (int i = 0; i < 4; ++i) CHECK(b[i] == Approx(-b[3 - i]));

  const auto single = line_frequencies(make_uncoupled_system(1, 1e-5), 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].freq_hz == 0.0);
}

TEST_CASE("line labels follow the spectator configuration") {
  const auto lines = line_frequencies(c2f3br_molecule(), 0);
  // J_ab < 0 dominates: b in |1> with c in |0> is the lowest line
  CHECK(lines.front().spectators == "10");
  CHECK(lines.back().spectators == "01");
}

TEST_CASE("mean amplitude equals polarization") {
  std::mt19937_64 rng(5);
  const auto sys = c2f3br_molecule();
  for (int trial = 0; trial < 50; ++trial) {
    const PopulationState s(3, fixtures::random_traceless(rng, 3));
    for (int j = 0; j < 3; ++j) {
      double total = 0.0;
      const auto spec = readout(s, sys, j);
      for (double a : amplitudes(spec)) total += a;
      CHECK(total / spec.lines.size() == Approx(polarization(s, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("dense readout refuses coherences") {
  const auto sys = c2f3br_molecule();
  auto rho = DenseState::from_populations(thermal_state(3));
  CHECK(amplitudes(readout(rho, sys, 0)) == std::vector<double>{1, 1, 1, 1});
  ComplexMatrix m = rho.matrix();
  m(0, 1) = m(1, 0) = 0.25;
  CHECK_THROWS_AS(readout(DenseState(3, m), sys, 0), Error);
}

TEST_CASE("mean enhancement errors") {
  const auto sys = c2f3br_molecule();
  const PopulationState boosted(3, fixtures::kBoosted3);
  const auto c = readout(boosted, sys, 2);
  CHECK_THROWS_AS(mean_enhancement(readout(thermal_state(3), sys, 0), c), Error);
  const auto two = readout(thermal_state(2), make_uncoupled_system(2, 1e-5), 0);
  CHECK_THROWS_AS(mean_enhancement(two, readout(thermal_state(3), sys, 0)), Error);
}

TEST_CASE("CSV export") {
  const auto sys = c2f3br_molecule();
  const PopulationState boosted(3, fixtures::kBoosted3);
  CHECK(spectrum_csv(readout(boosted, sys, 2)) ==
        "freq_hz,amplitude\n-64.4,-1\n-10.6,0\n10.6,0\n64.4,1\n");
}
