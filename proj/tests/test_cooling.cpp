#include "coolspin/cooling.hpp"
#include "coolspin/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace coolspin;
using doctest::Approx;

TEST_CASE("boost law at fixed points") {
  const auto half = boost_exact(0.5);
  CHECK(half.eps_a == Approx(0.6875).epsilon(1e-14));
  CHECK(half.eps_b == Approx(0.3125).epsilon(1e-14));
  CHECK(half.eps_c == Approx(-0.25).epsilon(1e-14));
  CHECK(half.gate_count == 5);
  CHECK(boost_exact(1.0).eps_a == Approx(1.0));
  const auto zero = boost_exact(0.0);
  CHECK(zero.eps_a == 0.0);
  CHECK(zero.enhancement == 1.5);
  CHECK_THROWS_AS(boost_exact(1.5), Error);
}

TEST_CASE("boost law small-eps limit") {
  const double e = 1e-6;
  const auto r = boost_exact(e);
  CHECK(r.eps_a / e == Approx(1.5).epsilon(1e-9));
  CHECK(r.eps_b / e == Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(r.eps_c / e) < 1e-5);
  CHECK(r.enhancement == Approx(1.5).epsilon(1e-9));
}

TEST_CASE("conditional polarization after the first CNOT") {
  for (double e : {1e-5, 0.1, 0.5, 0.9}) {
    const auto [c0, c1] = conditional_polarization_after_cnot(e);
    CHECK(c0 == Approx(2 * e / (1 + e * e)).epsilon(1e-12));
    CHECK(std::abs(c1) < 1e-15);
  }
  CHECK(conditional_polarization_after_cnot(1.0).first == Approx(1.0));
}

TEST_CASE("one round on three spins") {
  const auto plan = plan_rounds(3, 1e-5, 1.49e-5);
  REQUIRE(plan.rounds.size() == 1);
  CHECK(plan.rounds[0].triples.size() == 1);
  CHECK(plan.rounds[0].triples[0] == Triple{0, 1, 2});
  CHECK(plan.coldest == 0);
  CHECK(plan.total_gate_count == 5);
  const auto cmp = compare_modes(plan);
  CHECK(cmp.max_discrepancy < 1e-18);
}

TEST_CASE("two rounds on nine spins") {
  const double e0 = 1e-5;
  const auto plan = plan_rounds(9, e0, 2.2 * e0);
  REQUIRE(plan.rounds.size() == 2);
  CHECK(plan.rounds[0].triples.size() == 3);
  CHECK(plan.rounds[1].triples.size() == 1);
  CHECK(plan.rounds[1].triples[0] == Triple{0, 3, 6});
  CHECK(plan.predicted[plan.coldest] >= 2.2 * e0);
}

TEST_CASE("nine spins: exact and approximate modes track the iterated law") {
  const double e0 = 1e-3;
  const auto plan = plan_rounds(9, e0, 2.2 * e0);
  const auto cmp = compare_modes(plan);
  const double iterated = fixtures::law_a(fixtures::law_a(e0));
  for (const auto* sim : {&cmp.exact, &cmp.approximate}) {
    const double cold = sim->polarizations[plan.coldest];
    CHECK(std::abs(cold - 2.25 * e0) < 10 * e0 * e0 * e0);
    CHECK(cold == Approx(iterated).epsilon(1e-9));
    CHECK(sim->coldest_by_round.size() == 2);
  }
  CHECK(cmp.exact.entropy_after == Approx(cmp.exact.entropy_before).epsilon(1e-12));
  CHECK(std::abs(cmp.exact.entropy_after - cmp.exact.entropy_before) < 1e-10);
}

TEST_CASE("infeasible targets are reported") {
  try {
    plan_rounds(3, 1e-5, 2e-5);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
    CHECK(std::string(e.what()).find("infeasible") != std::string::npos);
  }
  CHECK_THROWS_AS(plan_rounds(2, 1e-5, 1.2e-5), Error);
  CHECK_THROWS_AS(plan_rounds(9, 1e-5, 1e-6), Error);
}

TEST_CASE("gate counts on a nearest-neighbour chain") {
  const std::vector<long long> want = {5, 32, 149, 608, 2309};
  const int ns[] = {3, 9, 27, 81, 243};
  for (int i = 0; i < 5; ++i) {
    const auto plan = plan_until_exhausted(ns[i], 1e-5);
    CHECK(plan.total_gate_count == want[i]);
    CHECK(plan.total_gate_count == plan.boost_gate_count + 3 * plan.routing_swaps);
  }
  PlanOptions free_routing;
  free_routing.topology = Topology::kAllToAll;
  const auto flat = plan_until_exhausted(27, 1e-5, free_routing);
  CHECK(flat.routing_swaps == 0);
  CHECK(flat.total_gate_count == 13 * 5);
}

TEST_CASE("recycling keeps middle spins in play") {
  PlanOptions opts;
  opts.recycle = true;
  const auto with = plan_until_exhausted(9, 1e-5, opts);
  const auto without = plan_until_exhausted(9, 1e-5);
  CHECK(with.boost_count >= without.boost_count);
  CHECK(compare_modes(with).max_discrepancy < 1e-12);
}

TEST_CASE("approximate mode rejects triples of unequal polarization") {
  CoolingPlan plan;
  plan.num_spins = 9;
  plan.eps0 = 1e-3;
  plan.rounds = {Round{{Triple{0, 1, 2}}}, Round{{Triple{0, 3, 4}}}};
  CHECK_NOTHROW(simulate_plan(plan, SimulationMode::kExact));
  CHECK_THROWS_AS(simulate_plan(plan, SimulationMode::kApproximate), Error);
  plan.rounds = {Round{{Triple{0, 1, 2}}}, Round{{Triple{2, 3, 4}}}};
  CHECK_THROWS_AS(plan.validate(), Error);  // c was discarded
}

TEST_CASE("exact mode is capacity guarded") {
  const auto plan = plan_until_exhausted(27, 1e-5);
  try {
    simulate_plan(plan, SimulationMode::kExact);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapacity);
  }
  CHECK_NOTHROW(simulate_plan(plan, SimulationMode::kApproximate));
}
