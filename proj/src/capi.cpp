#include "coolspin/coolspin.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "coolspin/bounds.hpp"
#include "coolspin/cooling.hpp"
#include "coolspin/error.hpp"
#include "coolspin/io.hpp"
#include "coolspin/pulse.hpp"
#include "coolspin/spectra.hpp"

struct cs_system {
  coolspin::SpinSystem value;
};
struct cs_state {
  coolspin::PopulationState value;
};
struct cs_circuit {
  coolspin::Circuit value;
};
struct cs_sequence {
  coolspin::PulseSequence value;
  coolspin::SpinSystem system;
};
struct cs_plan {
  coolspin::CoolingPlan value;
};

namespace {

thread_local std::string g_last_error;

cs_status to_status(coolspin::ErrorCode code) {
  switch (code) {
    case coolspin::ErrorCode::kInvalidArgument: return CS_ERR_INVALID_ARGUMENT;
    case coolspin::ErrorCode::kParse: return CS_ERR_PARSE;
    case coolspin::ErrorCode::kInfeasible: return CS_ERR_INFEASIBLE;
    case coolspin::ErrorCode::kCapacity: return CS_ERR_CAPACITY;
    case coolspin::ErrorCode::kIo: return CS_ERR_IO;
  }
  return CS_ERR_INTERNAL;
}

// Runs f, translating exceptions into status codes.
template <typename F>
cs_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return CS_OK;
  } catch (const coolspin::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CS_ERR_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CS_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  coolspin::require(p != nullptr, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* cs_last_error(void) { return g_last_error.c_str(); }
const char* cs_version(void) { return "1.0.0"; }
void cs_string_free(char* s) { std::free(s); }
int cs_population_capacity(void) { return coolspin::population_capacity(); }

// ---- spin systems ----

cs_status cs_system_load(const char* path, cs_system** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new cs_system{coolspin::load_spin_system(path)};
  });
}

cs_status cs_system_parse(const char* json, cs_system** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new cs_system{coolspin::parse_spin_system(json)};
  });
}

cs_status cs_system_c2f3br(double epsilon0, cs_system** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cs_system{coolspin::c2f3br_molecule(epsilon0)};
  });
}

cs_status cs_system_uncoupled(int n, double epsilon0, cs_system** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cs_system{coolspin::make_uncoupled_system(n, epsilon0)};
  });
}

void cs_system_free(cs_system* sys) { delete sys; }
int cs_system_num_spins(const cs_system* sys) { return sys ? sys->value.size() : 0; }
double cs_system_epsilon0(const cs_system* sys) { return sys ? sys->value.epsilon0 : 0.0; }

const char* cs_system_label(const cs_system* sys, int index) {
  if (!sys || index < 0 || index >= sys->value.size()) return nullptr;
  return sys->value.labels[index].c_str();
}

cs_status cs_system_spin_index(const cs_system* sys, const char* label, int* out) {
  return guarded([&] {
    need(sys, "sys");
    need(label, "label");
    need(out, "out");
    *out = sys->value.index_of(label);
  });
}

// ---- states ----

cs_status cs_state_thermal(int n, cs_state** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cs_state{coolspin::thermal_state(n)};
  });
}

cs_status cs_state_from_pops(int n, const double* pops, size_t len, cs_state** out) {
  return guarded([&] {
    need(pops, "pops");
    need(out, "out");
    *out = new cs_state{coolspin::PopulationState(n, std::vector<double>(pops, pops + len))};
  });
}

cs_status cs_state_iz(int n, int spin, cs_state** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cs_state{coolspin::iz_operator(n, spin)};
  });
}

cs_status cs_state_load(const char* path, cs_state** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new cs_state{coolspin::parse_population_state(coolspin::read_file(path))};
  });
}

cs_status cs_state_save(const cs_state* state, const char* path) {
  return guarded([&] {
    need(state, "state");
    need(path, "path");
    coolspin::write_file(path, coolspin::population_state_to_json(state->value));
  });
}

void cs_state_free(cs_state* state) { delete state; }
int cs_state_num_spins(const cs_state* state) { return state ? state->value.num_spins() : 0; }
size_t cs_state_dim(const cs_state* state) { return state ? state->value.dim() : 0; }

cs_status cs_state_pops(const cs_state* state, double* buf, size_t len) {
  return guarded([&] {
    need(state, "state");
    need(buf, "buf");
    const auto pops = state->value.pops();
    for (size_t i = 0; i < len && i < pops.size(); ++i) buf[i] = pops[i];
  });
}

cs_status cs_state_polarization(const cs_state* state, int spin, double* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = coolspin::polarization(state->value, spin);
  });
}

cs_status cs_state_apply_circuit(const cs_state* state, const cs_circuit* circuit,
                                 cs_state** out) {
  return guarded([&] {
    need(state, "state");
    need(circuit, "circuit");
    need(out, "out");
    coolspin::require(circuit->value.num_spins == state->value.num_spins(),
                      "circuit and state sizes differ");
    const auto perm = coolspin::circuit_permutation(circuit->value);
    *out = new cs_state{coolspin::apply_permutation(state->value, perm)};
  });
}

// ---- scalars and bounds ----

cs_status cs_entropy_binary(double eps, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = coolspin::entropy_binary(eps);
  });
}

cs_status cs_thermal_polarization(double larmor_hz, double temperature_k, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = coolspin::thermal_polarization(larmor_hz, temperature_k);
  });
}

cs_status cs_entropy_bound_kmax(double n, double eps0, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = coolspin::entropy_bound_kmax(n, eps0);
  });
}

cs_status cs_max_projection(const cs_state* rho, const cs_state* target, cs_projection* out) {
  return guarded([&] {
    need(rho, "rho");
    need(target, "target");
    need(out, "out");
    const auto r = coolspin::max_projection(rho->value, target->value);
    *out = cs_projection{r.a_initial, r.a_max, r.enhancement};
  });
}

cs_status cs_brute_force_max_projection(const cs_state* rho, const cs_state* target,
                                        double* out) {
  return guarded([&] {
    need(rho, "rho");
    need(target, "target");
    need(out, "out");
    *out = coolspin::brute_force_max_projection(rho->value, target->value);
  });
}

cs_status cs_decompose(const cs_state* rho, const cs_state* target, double* a, double* b_norm) {
  return guarded([&] {
    need(rho, "rho");
    need(target, "target");
    need(a, "a");
    need(b_norm, "b_norm");
    const auto d = coolspin::decompose(rho->value, target->value);
    *a = d.a;
    *b_norm = d.b_norm;
  });
}

// ---- boosting ----

cs_status cs_boost_exact(double eps, cs_boost_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = coolspin::boost_exact(eps);
    *out = cs_boost_report{r.eps_a, r.eps_b, r.eps_c, r.enhancement, r.gate_count};
  });
}

cs_status cs_conditional_polarization(double eps, double* cond0, double* cond1) {
  return guarded([&] {
    need(cond0, "cond0");
    need(cond1, "cond1");
    const auto [c0, c1] = coolspin::conditional_polarization_after_cnot(eps);
    *cond0 = c0;
    *cond1 = c1;
  });
}

// ---- circuits ----

cs_status cs_circuit_boost(cs_circuit** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cs_circuit{coolspin::boost_circuit()};
  });
}

cs_status cs_circuit_parse(const char* text, const cs_system* sys, cs_circuit** out) {
  return guarded([&] {
    need(text, "text");
    need(sys, "sys");
    need(out, "out");
    *out = new cs_circuit{coolspin::parse_circuit(text, sys->value)};
  });
}

cs_status cs_circuit_load(const char* path, const cs_system* sys, cs_circuit** out) {
  return guarded([&] {
    need(path, "path");
    need(sys, "sys");
    need(out, "out");
    *out = new cs_circuit{coolspin::load_circuit(path, sys->value)};
  });
}

void cs_circuit_free(cs_circuit* circuit) { delete circuit; }
size_t cs_circuit_num_gates(const cs_circuit* circuit) {
  return circuit ? circuit->value.gates.size() : 0;
}

// ---- compilation ----

void cs_duration_model_default(cs_duration_model* out) {
  if (!out) return;
  const coolspin::DurationModel m;
  *out = cs_duration_model{m.pulse90_s, m.pulse180_s};
}

cs_status cs_compile(const cs_circuit* circuit, const cs_system* sys,
                     const cs_duration_model* model, cs_toffoli toffoli, cs_sequence** out) {
  return guarded([&] {
    need(circuit, "circuit");
    need(sys, "sys");
    need(out, "out");
    coolspin::CompileOptions opts;
    if (model) {
      opts.durations.pulse90_s = model->pulse90_s;
      opts.durations.pulse180_s = model->pulse180_s;
    }
    opts.toffoli = toffoli == CS_TOFFOLI_STANDARD ? coolspin::ToffoliLowering::kStandard
                                                  : coolspin::ToffoliLowering::kPhase;
    *out = new cs_sequence{coolspin::compile(circuit->value, sys->value, opts), sys->value};
  });
}

void cs_sequence_free(cs_sequence* seq) { delete seq; }
double cs_sequence_total_duration(const cs_sequence* seq) {
  return seq ? seq->value.total_duration_s() : 0.0;
}
double cs_sequence_delay_time(const cs_sequence* seq) {
  return seq ? seq->value.delay_time_s() : 0.0;
}
size_t cs_sequence_num_events(const cs_sequence* seq) {
  return seq ? seq->value.events.size() : 0;
}

cs_status cs_sequence_to_json(const cs_sequence* seq, char** out) {
  return guarded([&] {
    need(seq, "seq");
    need(out, "out");
    *out = dup_string(coolspin::pulse_sequence_to_json(seq->value, seq->system));
  });
}

cs_status cs_sequence_verify(const cs_sequence* seq, const cs_circuit* circuit,
                             int* pattern_equal) {
  return guarded([&] {
    need(seq, "seq");
    need(circuit, "circuit");
    need(pattern_equal, "pattern_equal");
    const auto v = coolspin::simulate_sequence(seq->value, seq->system);
    const auto u = coolspin::circuit_unitary(circuit->value);
    *pattern_equal = coolspin::phase_pattern_equal(v, u) ? 1 : 0;
  });
}

// ---- plans ----

cs_status cs_plan_rounds(int n, double eps0, double target_eps, unsigned flags, cs_plan** out) {
  return guarded([&] {
    need(out, "out");
    coolspin::PlanOptions opts;
    opts.recycle = (flags & CS_PLAN_RECYCLE) != 0;
    opts.topology = (flags & CS_PLAN_ALL_TO_ALL) ? coolspin::Topology::kAllToAll
                                                 : coolspin::Topology::kLinearChain;
    auto plan = target_eps > 0.0 ? coolspin::plan_rounds(n, eps0, target_eps, opts)
                                 : coolspin::plan_until_exhausted(n, eps0, opts);
    *out = new cs_plan{std::move(plan)};
  });
}

cs_status cs_plan_parse(const char* json, cs_plan** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new cs_plan{coolspin::parse_cooling_plan(json)};
  });
}

void cs_plan_free(cs_plan* plan) { delete plan; }
int cs_plan_num_spins(const cs_plan* plan) { return plan ? plan->value.num_spins : 0; }
size_t cs_plan_num_rounds(const cs_plan* plan) { return plan ? plan->value.rounds.size() : 0; }
size_t cs_plan_round_size(const cs_plan* plan, size_t round) {
  if (!plan || round >= plan->value.rounds.size()) return 0;
  return plan->value.rounds[round].triples.size();
}
long long cs_plan_total_gates(const cs_plan* plan) {
  return plan ? plan->value.total_gate_count : 0;
}
long long cs_plan_routing_swaps(const cs_plan* plan) {
  return plan ? plan->value.routing_swaps : 0;
}
int cs_plan_coldest_spin(const cs_plan* plan) { return plan ? plan->value.coldest : 0; }

cs_status cs_plan_to_json(const cs_plan* plan, char** out) {
  return guarded([&] {
    need(plan, "plan");
    need(out, "out");
    *out = dup_string(coolspin::cooling_plan_to_json(plan->value));
  });
}

namespace {
coolspin::SimulationMode to_mode(cs_mode mode) {
  return mode == CS_MODE_EXACT ? coolspin::SimulationMode::kExact
                               : coolspin::SimulationMode::kApproximate;
}
}  // namespace

cs_status cs_plan_simulate(const cs_plan* plan, cs_mode mode, double* buf, size_t len) {
  return guarded([&] {
    need(plan, "plan");
    need(buf, "buf");
    coolspin::require(len >= static_cast<size_t>(plan->value.num_spins), "buffer too small");
    const auto sim = coolspin::simulate_plan(plan->value, to_mode(mode));
    std::copy(sim.polarizations.begin(), sim.polarizations.end(), buf);
  });
}

cs_status cs_plan_round_trace(const cs_plan* plan, cs_mode mode, double* buf, size_t len) {
  return guarded([&] {
    need(plan, "plan");
    need(buf, "buf");
    coolspin::require(len >= plan->value.rounds.size(), "buffer too small");
    const auto sim = coolspin::simulate_plan(plan->value, to_mode(mode));
    std::copy(sim.coldest_by_round.begin(), sim.coldest_by_round.end(), buf);
  });
}

cs_status cs_plan_entropy(const cs_plan* plan, double* before, double* after) {
  return guarded([&] {
    need(plan, "plan");
    need(before, "before");
    need(after, "after");
    const auto sim = coolspin::simulate_plan(plan->value, coolspin::SimulationMode::kExact);
    *before = sim.entropy_before;
    *after = sim.entropy_after;
  });
}

// ---- spectra ----

cs_status cs_spectrum_readout(const cs_state* state, const cs_system* sys, int spin,
                              cs_line* buf, size_t cap, size_t* count) {
  return guarded([&] {
    need(state, "state");
    need(sys, "sys");
    need(count, "count");
    const auto spec = coolspin::readout(state->value, sys->value, spin);
    *count = spec.lines.size();
    for (size_t i = 0; i < cap && i < spec.lines.size(); ++i) {
      buf[i] = cs_line{spec.lines[i].freq_hz, spec.lines[i].amplitude};
    }
  });
}

cs_status cs_spectrum_csv(const cs_state* state, const cs_system* sys, int spin, char** out) {
  return guarded([&] {
    need(state, "state");
    need(sys, "sys");
    need(out, "out");
    *out = dup_string(coolspin::spectrum_csv(coolspin::readout(state->value, sys->value, spin)));
  });
}

cs_status cs_spectrum_mean_enhancement(const cs_state* after, const cs_state* before,
                                       const cs_system* sys, int spin, double* out) {
  return guarded([&] {
    need(after, "after");
    need(before, "before");
    need(sys, "sys");
    need(out, "out");
    *out = coolspin::mean_enhancement(coolspin::readout(after->value, sys->value, spin),
                                      coolspin::readout(before->value, sys->value, spin));
  });
}

}  // extern "C"
