#pragma once

#include <utility>
#include <vector>

#include "coolspin/circuit.hpp"
#include "coolspin/spin_core.hpp"

namespace coolspin {

// Boosting block on (a, b, c): CNOT(b->c), NOT(c), then the controlled swap
// of a and b on c expanded as CNOT(b->a), TOFFOLI(a, c -> b), CNOT(b->a).
std::vector<Gate> boost_gates(int a, int b, int c);
// The block on a three-spin register with a = 0, b = 1, c = 2.
Circuit boost_circuit();
// Elementary gates in one boosting block.
inline constexpr int kBoostGateCount = 5;
// Elementary gates charged for one nearest-neighbour SWAP.
inline constexpr int kSwapGateCount = 3;

struct BoostReport {
  double eps_a = 0.0;
  double eps_b = 0.0;
  double eps_c = 0.0;
  int gate_count = kBoostGateCount;
  double enhancement = 0.0;  // eps_a / eps_in; 1.5 in the eps -> 0 limit
};

// Exact marginals after one boost of three independent spins at polarization
// eps, obtained by pushing the 8-entry probability vector through the block.
BoostReport boost_exact(double eps);

// After CNOT(b->c): polarization of b given c' = 0 and given c' = 1.
std::pair<double, double> conditional_polarization_after_cnot(double eps);

struct Triple {
  int a = 0;  // receives the boosted polarization
  int b = 0;
  int c = 0;
  bool operator==(const Triple&) const = default;
};

struct Round {
  std::vector<Triple> triples;
};

enum class Topology {
  // Spins on a nearest-neighbour chain; triples are made contiguous with
  // SWAPs before boosting and the SWAPs are charged to the gate count.
  kLinearChain,
  // Any triple can be boosted directly.
  kAllToAll,
};

struct PlanOptions {
  // Return role-b spins to the pool at their post-boost polarization instead
  // of discarding them.
  bool recycle = false;
  Topology topology = Topology::kLinearChain;
};

struct CoolingPlan {
  int num_spins = 0;
  double eps0 = 0.0;
  double target_eps = 0.0;  // 0 when planned to exhaustion
  PlanOptions options;
  std::vector<Round> rounds;

  int boost_count = 0;
  long long routing_swaps = 0;
  long long boost_gate_count = 0;
  long long total_gate_count = 0;  // boost gates + kSwapGateCount * swaps

  // Approximate-mode prediction used while planning.
  std::vector<double> predicted;
  std::vector<int> live;  // spins still in the pool at the end, ascending
  int coldest = 0;        // live spin with the highest predicted polarization

  void validate() const;
};

// Plans rounds until one spin reaches target_eps. Throws Error(kInfeasible)
// when the pool runs dry first.
CoolingPlan plan_rounds(int n, double eps0, double target_eps, PlanOptions options = {});
// Plans rounds until no pool holds three spins of equal polarization.
CoolingPlan plan_until_exhausted(int n, double eps0, PlanOptions options = {});

enum class SimulationMode { kExact, kApproximate };

struct PlanSimulation {
  SimulationMode mode = SimulationMode::kApproximate;
  std::vector<double> polarizations;  // per spin, after the last round
  std::vector<double> coldest_by_round;
  // Exact mode only: Shannon entropy of the joint distribution in bits.
  double entropy_before = 0.0;
  double entropy_after = 0.0;
};

// Exact mode pushes the full 2^n probability vector through every gate and
// is limited by population_capacity(). Approximate mode iterates the closed
// forms of boost_exact, treating spins as independent between rounds.
PlanSimulation simulate_plan(const CoolingPlan& plan, SimulationMode mode);

struct PlanComparison {
  PlanSimulation exact;
  PlanSimulation approximate;
  double max_discrepancy = 0.0;
};
PlanComparison compare_modes(const CoolingPlan& plan);

}  // namespace coolspin
