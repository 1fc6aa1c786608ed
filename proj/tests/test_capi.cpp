// Exercises the shared library only through its C header.
#include <cstring>
#include <string>
#include <vector>

#include "coolspin/coolspin.h"
#include "doctest.h"

TEST_CASE("system and bound through the C API") {
  cs_system* sys = nullptr;
  REQUIRE(cs_system_load(COOLSPIN_DATA_DIR "/c2f3br.json", &sys) == CS_OK);
  CHECK(cs_system_num_spins(sys) == 3);
  CHECK(std::string(cs_system_label(sys, 2)) == "c");
  CHECK(cs_system_label(sys, 3) == nullptr);
  int idx = -1;
  CHECK(cs_system_spin_index(sys, "b", &idx) == CS_OK);
  CHECK(idx == 1);
  CHECK(cs_system_spin_index(sys, "q", &idx) == CS_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(cs_last_error()) > 0);

  cs_state* th = nullptr;
  cs_state* a = nullptr;
  REQUIRE(cs_state_thermal(3, &th) == CS_OK);
  REQUIRE(cs_state_iz(3, 0, &a) == CS_OK);
  cs_projection p{};
  CHECK(cs_max_projection(th, a, &p) == CS_OK);
  CHECK(p.enhancement == doctest::Approx(1.5));
  double brute = 0;
  CHECK(cs_brute_force_max_projection(th, a, &brute) == CS_OK);
  CHECK(brute == doctest::Approx(1.5));
  cs_state_free(a);
  cs_state_free(th);
  cs_system_free(sys);
}

TEST_CASE("boost, compile and spectrum through the C API") {
  cs_system* sys = nullptr;
  REQUIRE(cs_system_c2f3br(3e-5, &sys) == CS_OK);
  cs_circuit* boost = nullptr;
  REQUIRE(cs_circuit_boost(&boost) == CS_OK);
  CHECK(cs_circuit_num_gates(boost) == 5);

  cs_state* th = nullptr;
  cs_state* out = nullptr;
  REQUIRE(cs_state_thermal(3, &th) == CS_OK);
  REQUIRE(cs_state_apply_circuit(th, boost, &out) == CS_OK);
  std::vector<double> pops(8);
  CHECK(cs_state_pops(out, pops.data(), pops.size()) == CS_OK);
  CHECK(pops == std::vector<double>{0.5, 1.5, 0.5, 0.5, -0.5, -0.5, -0.5, -1.5});

  cs_line lines[4];
  size_t count = 0;
  CHECK(cs_spectrum_readout(out, sys, 0, lines, 4, &count) == CS_OK);
  CHECK(count == 4);
  CHECK(lines[1].amplitude == doctest::Approx(2.0));
  double mean = 0;
  CHECK(cs_spectrum_mean_enhancement(out, th, sys, 0, &mean) == CS_OK);
  CHECK(mean == doctest::Approx(1.5));
  char* csv = nullptr;
  CHECK(cs_spectrum_csv(out, sys, 2, &csv) == CS_OK);
  CHECK(std::string(csv) == "freq_hz,amplitude\n-64.4,-1\n-10.6,0\n10.6,0\n64.4,1\n");
  cs_string_free(csv);

  cs_duration_model model;
  cs_duration_model_default(&model);
  cs_sequence* seq = nullptr;
  REQUIRE(cs_compile(boost, sys, &model, CS_TOFFOLI_PHASE, &seq) == CS_OK);
  int ok = 0;
  CHECK(cs_sequence_verify(seq, boost, &ok) == CS_OK);
  CHECK(ok == 1);
  CHECK(cs_sequence_total_duration(seq) > 0.035);
  CHECK(cs_sequence_total_duration(seq) < 0.140);
  char* js = nullptr;
  CHECK(cs_sequence_to_json(seq, &js) == CS_OK);
  CHECK(std::string(js).find("\"events\"") != std::string::npos);
  cs_string_free(js);

  cs_boost_report r{};
  CHECK(cs_boost_exact(0.5, &r) == CS_OK);
  CHECK(r.eps_a == doctest::Approx(0.6875));
  CHECK(r.gate_count == 5);

  cs_sequence_free(seq);
  cs_state_free(out);
  cs_state_free(th);
  cs_circuit_free(boost);
  cs_system_free(sys);
}

TEST_CASE("plans and error codes through the C API") {
  cs_plan* plan = nullptr;
  REQUIRE(cs_plan_rounds(9, 1e-5, 2.2e-5, 0, &plan) == CS_OK);
  CHECK(cs_plan_num_rounds(plan) == 2);
  CHECK(cs_plan_round_size(plan, 0) == 3);
  std::vector<double> eps(9);
  CHECK(cs_plan_simulate(plan, CS_MODE_EXACT, eps.data(), eps.size()) == CS_OK);
  CHECK(eps[cs_plan_coldest_spin(plan)] > 2.2e-5);
  CHECK(cs_plan_simulate(plan, CS_MODE_EXACT, eps.data(), 2) == CS_ERR_INVALID_ARGUMENT);
  char* js = nullptr;
  REQUIRE(cs_plan_to_json(plan, &js) == CS_OK);
  cs_plan* again = nullptr;
  CHECK(cs_plan_parse(js, &again) == CS_OK);
  CHECK(cs_plan_total_gates(again) == cs_plan_total_gates(plan));
  cs_string_free(js);
  cs_plan_free(again);
  cs_plan_free(plan);

  cs_plan* bad = nullptr;
  CHECK(cs_plan_rounds(3, 1e-5, 1e-3, 0, &bad) == CS_ERR_INFEASIBLE);
  CHECK(bad == nullptr);
  CHECK(cs_system_parse("{not json", nullptr) == CS_ERR_INVALID_ARGUMENT);
  cs_system* sys = nullptr;
  CHECK(cs_system_parse("{not json", &sys) == CS_ERR_PARSE);
  CHECK(cs_system_load("/nonexistent.json", &sys) == CS_ERR_IO);
  CHECK(sys == nullptr);

  cs_plan* big = nullptr;
  REQUIRE(cs_plan_rounds(27, 1e-5, 0.0, 0, &big) == CS_OK);
  std::vector<double> out(27);
  CHECK(cs_plan_simulate(big, CS_MODE_EXACT, out.data(), out.size()) == CS_ERR_CAPACITY);
  CHECK(cs_plan_simulate(big, CS_MODE_APPROX, out.data(), out.size()) == CS_OK);
  cs_plan_free(big);

  double h = 0;
  CHECK(cs_entropy_binary(2.0, &h) == CS_ERR_INVALID_ARGUMENT);
  CHECK(cs_entropy_binary(0.0, &h) == CS_OK);
  CHECK(h == 1.0);
  CHECK(cs_population_capacity() >= 1);
  CHECK(std::string(cs_version()).size() > 0);
}
