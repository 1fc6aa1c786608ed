#pragma once

#include <string>
#include <string_view>

#include "coolspin/cooling.hpp"
#include "coolspin/pulse.hpp"
#include "coolspin/spin_core.hpp"

namespace coolspin {

// {"labels": [...], "j_hz": [[...]], "shift_ppm": [...], "epsilon0": x}
SpinSystem parse_spin_system(std::string_view json);
SpinSystem load_spin_system(const std::string& path);
std::string spin_system_to_json(const SpinSystem& sys);

// {"n": 3, "pops": [...]}
PopulationState parse_population_state(std::string_view json);
std::string population_state_to_json(const PopulationState& s);

// {"num_spins", "total_duration_s", "delay_time_s", "events": [...],
//  "trailing_frame_deg": [...]}; phases in degrees, durations in seconds.
std::string pulse_sequence_to_json(const PulseSequence& seq, const SpinSystem& sys);

// {"n", "eps0", "target_eps", "recycle", "topology", "rounds": [[[a,b,c],..],..],
//  "boost_count", "routing_swaps", "total_gate_count"}
std::string cooling_plan_to_json(const CoolingPlan& plan);
CoolingPlan parse_cooling_plan(std::string_view json);

// Labels used when a plan has no spin system: a..z, then s26, s27, ...
std::string default_label(int index);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace coolspin
