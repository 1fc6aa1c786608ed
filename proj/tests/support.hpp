#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "coolspin/spin_core.hpp"

namespace fixtures {

// Boost permutation written out from its truth table, i -> perm[i].
inline const std::vector<std::uint32_t> kBoostPerm = {1, 0, 2, 5, 3, 4, 6, 7};

// Thermal and boosted diagonals (deviation units, halves).
inline const std::vector<double> kThermal3 = {1.5, 0.5, 0.5, -0.5, 0.5, -0.5, -0.5, -1.5};
inline const std::vector<double> kBoosted3 = {0.5, 1.5, 0.5, 0.5, -0.5, -0.5, -0.5, -1.5};

// Signed variant of the boost permutation (same support, some entries -1).
inline coolspin::ComplexMatrix signed_boost_matrix() {
  const int rows[8][8] = {
      {0, 1, 0, 0, 0, 0, 0, 0},  {1, 0, 0, 0, 0, 0, 0, 0}, {0, 0, -1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, -1, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, -1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 0},  {0, 0, 0, 0, 0, 0, 0, 1}};
  coolspin::ComplexMatrix m(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) m(r, c) = rows[r][c];
  return m;
}

inline coolspin::ComplexMatrix boost_matrix() {
  coolspin::ComplexMatrix m = coolspin::ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) m(kBoostPerm[i], i) = 1.0;
  return m;
}

// Closed forms for one boost of three spins at polarization e.
inline double law_a(double e) { return e * (3.0 - e * e) / 2.0; }
inline double law_b(double e) { return e * (1.0 + e * e) / 2.0; }
inline double law_c(double e) { return -e * e; }

inline std::vector<double> random_traceless(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(std::size_t{1} << n);
  double mean = 0.0;
  for (double& x : v) mean += (x = u(rng));
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
  return v;
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace fixtures
