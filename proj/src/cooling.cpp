#include "coolspin/cooling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "coolspin/error.hpp"

namespace coolspin {

namespace {

void check_eps(double eps, const char* what) {
  require(eps >= 0.0 && eps <= 1.0, std::string(what) + ": eps must lie in [0, 1]");
}

// Approximate-mode update of one triple with common input polarization.
struct BoostLaw {
  double a, b, c;
};
BoostLaw boost_law(double eps) {
  const BoostReport r = boost_exact(eps);
  return {r.eps_a, r.eps_b, r.eps_c};
}

bool same_polarization(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

// Positions of spins on a nearest-neighbour chain.
class Chain {
 public:
  explicit Chain(int n) : order_(n), pos_(n) {
    std::iota(order_.begin(), order_.end(), 0);
    std::iota(pos_.begin(), pos_.end(), 0);
  }

  // Moves the outer members next to the middle one; returns SWAPs used.
  long long gather(const Triple& t) {
    std::array<int, 3> p = {pos_[t.a], pos_[t.b], pos_[t.c]};
    std::sort(p.begin(), p.end());
    long long swaps = (p[1] - p[0] - 1) + (p[2] - p[1] - 1);
    std::rotate(order_.begin() + p[0], order_.begin() + p[0] + 1, order_.begin() + p[1]);
    std::rotate(order_.begin() + p[1] + 1, order_.begin() + p[2], order_.begin() + p[2] + 1);
    for (int i = p[0]; i <= p[2]; ++i) pos_[order_[i]] = i;
    return swaps;
  }

 private:
  std::vector<int> order_;
  std::vector<int> pos_;
};

// Replays pool membership; returns the live set before each round and the
// final live set.
std::vector<std::set<int>> replay_live(const CoolingPlan& plan) {
  std::vector<std::set<int>> out;
  std::set<int> live;
  for (int i = 0; i < plan.num_spins; ++i) live.insert(i);
  for (std::size_t r = 0; r < plan.rounds.size(); ++r) {
    out.push_back(live);
    std::set<int> used;
    for (const auto& t : plan.rounds[r].triples) {
      for (int s : {t.a, t.b, t.c}) {
        require(s >= 0 && s < plan.num_spins,
                "plan: round " + std::to_string(r) + " references spin out of range");
        require(live.count(s) != 0,
                "plan: round " + std::to_string(r) + " uses discarded spin " + std::to_string(s));
        require(used.insert(s).second,
                "plan: round " + std::to_string(r) + " reuses spin " + std::to_string(s));
      }
    }
    for (const auto& t : plan.rounds[r].triples) {
      live.erase(t.c);
      if (!plan.options.recycle) live.erase(t.b);
    }
  }
  out.push_back(live);
  return out;
}

void finish_plan(CoolingPlan& plan, const std::vector<double>& eps, const std::set<int>& live) {
  plan.predicted = eps;
  plan.live.assign(live.begin(), live.end());
  plan.coldest = plan.live.empty() ? 0 : plan.live.front();
  for (int s : plan.live) {
    if (eps[s] > eps[plan.coldest]) plan.coldest = s;
  }
  plan.boost_gate_count = static_cast<long long>(plan.boost_count) * kBoostGateCount;
  plan.total_gate_count = plan.boost_gate_count + kSwapGateCount * plan.routing_swaps;
}

// Shared driver: keeps boosting the coldest equal-polarization pool until
// `done` says stop or no pool holds three spins. Returns whether `done` fired.
template <typename Done>
bool run_planner(CoolingPlan& plan, Done done) {
  const int n = plan.num_spins;
  std::vector<double> eps(n, plan.eps0);
  std::set<int> live;
  for (int i = 0; i < n; ++i) live.insert(i);
  Chain chain(n);

  bool reached = false;
  while (true) {
    if (done(eps, live)) {
      reached = true;
      break;
    }
    // Pools keyed by exact polarization value, coldest first; members in
    // ascending spin index.
    std::map<double, std::vector<int>, std::greater<>> pools;
    for (int s : live) pools[eps[s]].push_back(s);
    auto pool = std::find_if(pools.begin(), pools.end(),
                             [](const auto& kv) { return kv.second.size() >= 3; });
    if (pool == pools.end()) break;

    const auto& members = pool->second;
    const BoostLaw law = boost_law(pool->first);
    Round round;
    for (std::size_t k = 0; k + 2 < members.size(); k += 3) {
      Triple t{members[k], members[k + 1], members[k + 2]};
      if (plan.options.topology == Topology::kLinearChain) plan.routing_swaps += chain.gather(t);
      eps[t.a] = law.a;
      eps[t.b] = law.b;
      eps[t.c] = law.c;
      live.erase(t.c);
      if (!plan.options.recycle) live.erase(t.b);
      round.triples.push_back(t);
      ++plan.boost_count;
    }
    plan.rounds.push_back(std::move(round));
  }
  finish_plan(plan, eps, live);
  return reached;
}

}  // namespace

std::vector<Gate> boost_gates(int a, int b, int c) {
  return {Gate::cnot(b, c), Gate::not_(c), Gate::cnot(b, a), Gate::toffoli(a, c, b),
          Gate::cnot(b, a)};
}

Circuit boost_circuit() { return Circuit{3, boost_gates(0, 1, 2)}; }

BoostReport boost_exact(double eps) {
  check_eps(eps, "boost_exact");
  ProbabilityState p = product_state(3, eps);
  std::vector<double> v(p.probs().begin(), p.probs().end());
  for (const auto& g : boost_gates(0, 1, 2)) apply_gate_inplace(v, 3, g);
  const ProbabilityState out(3, std::move(v));
  BoostReport r;
  r.eps_a = marginal_polarization(out, 0);
  r.eps_b = marginal_polarization(out, 1);
  r.eps_c = marginal_polarization(out, 2);
  r.enhancement = eps > 0.0 ? r.eps_a / eps : 1.5;
  return r;
}

std::pair<double, double> conditional_polarization_after_cnot(double eps) {
  check_eps(eps, "conditional_polarization_after_cnot");
  ProbabilityState p = product_state(3, eps);
  std::vector<double> v(p.probs().begin(), p.probs().end());
  apply_gate_inplace(v, 3, Gate::cnot(1, 2));
  // [c'][b] joint probabilities, marginalized over a.
  double joint[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (std::size_t i = 0; i < v.size(); ++i) {
    joint[spin_bit(i, 3, 2)][spin_bit(i, 3, 1)] += v[i];
  }
  auto cond = [&](int c) {
    const double total = joint[c][0] + joint[c][1];
    return total > 0.0 ? (joint[c][0] - joint[c][1]) / total : 0.0;
  };
  return {cond(0), cond(1)};
}

void CoolingPlan::validate() const {
  require(num_spins >= 1, "plan: spin count must be >= 1");
  check_eps(eps0, "plan");
  replay_live(*this);
}

CoolingPlan plan_rounds(int n, double eps0, double target_eps, PlanOptions options) {
  require(n >= 3, "plan_rounds: need at least 3 spins");
  require(eps0 > 0.0 && eps0 < target_eps && target_eps <= 1.0,
          "plan_rounds: require 0 < eps0 < target_eps <= 1");
  CoolingPlan plan;
  plan.num_spins = n;
  plan.eps0 = eps0;
  plan.target_eps = target_eps;
  plan.options = options;
  const bool reached = run_planner(plan, [&](const std::vector<double>& eps, const std::set<int>& live) {
    return std::any_of(live.begin(), live.end(), [&](int s) { return eps[s] >= target_eps; });
  });
  if (!reached) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "infeasible: " << n << " spins at eps0 = " << eps0 << " reach at most "
        << plan.predicted[plan.coldest] << " after " << plan.rounds.size()
        << " rounds; target was " << target_eps;
    fail(ErrorCode::kInfeasible, msg.str());
  }
  return plan;
}

CoolingPlan plan_until_exhausted(int n, double eps0, PlanOptions options) {
  require(n >= 3, "plan_until_exhausted: need at least 3 spins");
  require(eps0 > 0.0 && eps0 <= 1.0, "plan_until_exhausted: require 0 < eps0 <= 1");
  CoolingPlan plan;
  plan.num_spins = n;
  plan.eps0 = eps0;
  plan.options = options;
  run_planner(plan, [](const auto&, const auto&) { return false; });
  return plan;
}

PlanSimulation simulate_plan(const CoolingPlan& plan, SimulationMode mode) {
  plan.validate();
  const auto live_sets = replay_live(plan);
  const int n = plan.num_spins;
  PlanSimulation sim;
  sim.mode = mode;

  auto coldest_of = [](const std::vector<double>& eps, const std::set<int>& live) {
    double best = -1.0;
    for (int s : live) best = std::max(best, eps[s]);
    return best;
  };

  if (mode == SimulationMode::kApproximate) {
    std::vector<double> eps(n, plan.eps0);
    for (std::size_t r = 0; r < plan.rounds.size(); ++r) {
      for (const auto& t : plan.rounds[r].triples) {
        if (!same_polarization(eps[t.a], eps[t.b]) || !same_polarization(eps[t.a], eps[t.c])) {
          fail(ErrorCode::kInvalidArgument,
               "plan: round " + std::to_string(r) + " boosts spins of unequal polarization");
        }
        const BoostLaw law = boost_law(eps[t.a]);
        eps[t.a] = law.a;
        eps[t.b] = law.b;
        eps[t.c] = law.c;
      }
      sim.coldest_by_round.push_back(coldest_of(eps, live_sets[r + 1]));
    }
    sim.polarizations = std::move(eps);
    return sim;
  }

  if (n > population_capacity()) {
    fail(ErrorCode::kCapacity, "exact simulation of " + std::to_string(n) +
                                   " spins exceeds capacity of " +
                                   std::to_string(population_capacity()));
  }
  ProbabilityState state = product_state(n, plan.eps0);
  sim.entropy_before = shannon_entropy(state);
  auto values = state.mutable_probs();
  std::vector<double> eps(n);
  for (std::size_t r = 0; r < plan.rounds.size(); ++r) {
    for (const auto& t : plan.rounds[r].triples) {
      for (const auto& g : boost_gates(t.a, t.b, t.c)) apply_gate_inplace(values, n, g);
    }
    for (int j = 0; j < n; ++j) eps[j] = marginal_polarization(state, j);
    sim.coldest_by_round.push_back(coldest_of(eps, live_sets[r + 1]));
  }
  for (int j = 0; j < n; ++j) eps[j] = marginal_polarization(state, j);
  sim.polarizations = std::move(eps);
  sim.entropy_after = shannon_entropy(state);
  return sim;
}

PlanComparison compare_modes(const CoolingPlan& plan) {
  PlanComparison cmp;
  cmp.exact = simulate_plan(plan, SimulationMode::kExact);
  cmp.approximate = simulate_plan(plan, SimulationMode::kApproximate);
  for (int j = 0; j < plan.num_spins; ++j) {
    cmp.max_discrepancy = std::max(
        cmp.max_discrepancy, std::abs(cmp.exact.polarizations[j] - cmp.approximate.polarizations[j]));
  }
  return cmp;
}

}  // namespace coolspin
