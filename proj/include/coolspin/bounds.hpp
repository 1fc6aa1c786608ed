#pragma once

#include "coolspin/spin_core.hpp"

namespace coolspin {

struct ProjectionResult {
  double a_max = 0.0;      // best coefficient on A reachable by any unitary
  double a_initial = 0.0;  // coefficient of rho_i itself on A
  double enhancement = 0.0;
};

// rho = a A + R with Tr(A^dagger R) = 0.
struct Decomposition {
  double a = 0.0;
  double b_norm = 0.0;  // Frobenius norm of R
  ComplexMatrix remainder;
};

// Eigenvalue-rearrangement bound: a_max = Tr(rho^D A^D) / Tr(A^2) with both
// spectra sorted descending. Enhancement is +inf when a_initial is zero and
// a_max is positive.
ProjectionResult max_projection(const PopulationState& rho, const PopulationState& target);
ProjectionResult max_projection(const DenseState& rho, const DenseState& target);

// Exhaustive search over every basis permutation of rho (n <= 3).
double brute_force_max_projection(const PopulationState& rho,
                                  const PopulationState& target);

// Entropy bound on extractable pure spins, (1 - H(eps0)) n. Not floored.
double entropy_bound_kmax(double n, double eps0);

Decomposition decompose(const DenseState& rho, const DenseState& target);
Decomposition decompose(const PopulationState& rho, const PopulationState& target);

}  // namespace coolspin
