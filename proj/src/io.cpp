#include "coolspin/io.hpp"

#include <fstream>
#include <sstream>

#include "coolspin/error.hpp"
#include "json.hpp"

namespace coolspin {

using nlohmann::json;

namespace {

json parse_or_fail(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string(what) + ": malformed JSON: " + e.what());
  }
}

template <typename T>
T field(const json& j, const char* name, const char* what) {
  if (!j.is_object() || !j.contains(name)) {
    fail(ErrorCode::kParse, std::string(what) + ": missing field '" + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::kParse, std::string(what) + ": field '" + name + "' has the wrong type");
  }
}

// Validation failures inside a file are reported as parse errors.
template <typename F>
auto as_parse_error(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) {
      fail(ErrorCode::kParse, std::string(what) + ": " + e.what());
    }
    throw;
  }
}

}  // namespace

std::string default_label(int index) {
  return index < 26 ? std::string(1, static_cast<char>('a' + index)) : "s" + std::to_string(index);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << contents;
}

SpinSystem parse_spin_system(std::string_view text) {
  const json j = parse_or_fail(text, "spin system");
  SpinSystem sys;
  sys.labels = field<std::vector<std::string>>(j, "labels", "spin system");
  sys.j_hz = field<std::vector<std::vector<double>>>(j, "j_hz", "spin system");
  if (j.contains("shift_ppm")) {
    sys.shift_ppm = field<std::vector<double>>(j, "shift_ppm", "spin system");
  }
  sys.epsilon0 = field<double>(j, "epsilon0", "spin system");
  as_parse_error("spin system", [&] {
    sys.validate();
    return 0;
  });
  return sys;
}

SpinSystem load_spin_system(const std::string& path) {
  return parse_spin_system(read_file(path));
}

std::string spin_system_to_json(const SpinSystem& sys) {
  json j;
  j["labels"] = sys.labels;
  j["j_hz"] = sys.j_hz;
  j["shift_ppm"] = sys.shift_ppm;
  j["epsilon0"] = sys.epsilon0;
  return j.dump(2) + "\n";
}

PopulationState parse_population_state(std::string_view text) {
  const json j = parse_or_fail(text, "state");
  const int n = field<int>(j, "n", "state");
  auto pops = field<std::vector<double>>(j, "pops", "state");
  return as_parse_error("state", [&] { return PopulationState(n, std::move(pops)); });
}

std::string population_state_to_json(const PopulationState& s) {
  json j;
  j["n"] = s.num_spins();
  j["pops"] = std::vector<double>(s.pops().begin(), s.pops().end());
  return j.dump(2) + "\n";
}

std::string pulse_sequence_to_json(const PulseSequence& seq, const SpinSystem& sys) {
  require(seq.num_spins == sys.size(), "sequence and spin system sizes differ");
  json events = json::array();
  for (const auto& e : seq.events) {
    json ev;
    if (const auto* p = std::get_if<SelectivePulse>(&e)) {
      ev = {{"type", "pulse"}, {"spin", sys.labels[p->spin]}, {"phase_deg", p->phase_deg},
            {"angle_deg", p->angle_deg}, {"duration_s", p->duration_s}};
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      ev = {{"type", "delay"}, {"duration_s", d->duration_s}};
    } else if (const auto* f = std::get_if<FrameShift>(&e)) {
      ev = {{"type", "frame"}, {"spin", sys.labels[f->spin]}, {"phase_deg", f->phase_deg},
            {"duration_s", 0.0}};
    } else if (const auto* z = std::get_if<ZRotation>(&e)) {
      ev = {{"type", "zrot"}, {"spin", sys.labels[z->spin]}, {"angle_deg", z->angle_deg},
            {"duration_s", z->duration_s}};
    }
    events.push_back(std::move(ev));
  }
  json j;
  j["num_spins"] = seq.num_spins;
  j["labels"] = sys.labels;
  j["total_duration_s"] = seq.total_duration_s();
  j["delay_time_s"] = seq.delay_time_s();
  j["events"] = std::move(events);
  j["trailing_frame_deg"] = seq.trailing_frame_deg;
  return j.dump(2) + "\n";
}

std::string cooling_plan_to_json(const CoolingPlan& plan) {
  json rounds = json::array();
  for (const auto& r : plan.rounds) {
    json triples = json::array();
    for (const auto& t : r.triples) {
      triples.push_back({default_label(t.a), default_label(t.b), default_label(t.c)});
    }
    rounds.push_back(std::move(triples));
  }
  json j;
  j["n"] = plan.num_spins;
  j["eps0"] = plan.eps0;
  j["target_eps"] = plan.target_eps;
  j["recycle"] = plan.options.recycle;
  j["topology"] = plan.options.topology == Topology::kLinearChain ? "linear-chain" : "all-to-all";
  j["rounds"] = std::move(rounds);
  j["boost_count"] = plan.boost_count;
  j["routing_swaps"] = plan.routing_swaps;
  j["total_gate_count"] = plan.total_gate_count;
  return j.dump(2) + "\n";
}

CoolingPlan parse_cooling_plan(std::string_view text) {
  const json j = parse_or_fail(text, "plan");
  CoolingPlan plan;
  plan.num_spins = field<int>(j, "n", "plan");
  plan.eps0 = field<double>(j, "eps0", "plan");
  if (j.contains("target_eps")) plan.target_eps = field<double>(j, "target_eps", "plan");
  if (j.contains("recycle")) plan.options.recycle = field<bool>(j, "recycle", "plan");
  if (j.contains("topology")) {
    const auto topo = field<std::string>(j, "topology", "plan");
    if (topo == "linear-chain") {
      plan.options.topology = Topology::kLinearChain;
    } else if (topo == "all-to-all") {
      plan.options.topology = Topology::kAllToAll;
    } else {
      fail(ErrorCode::kParse, "plan: unknown topology '" + topo + "'");
    }
  }
  auto index_of = [&](const std::string& label) {
    for (int i = 0; i < plan.num_spins; ++i) {
      if (default_label(i) == label) return i;
    }
    fail(ErrorCode::kParse, "plan: unknown spin label '" + label + "'");
  };
  const auto rounds = field<std::vector<std::vector<std::vector<std::string>>>>(j, "rounds", "plan");
  for (const auto& r : rounds) {
    Round round;
    for (const auto& t : r) {
      if (t.size() != 3) fail(ErrorCode::kParse, "plan: every triple needs three spins");
      round.triples.push_back(Triple{index_of(t[0]), index_of(t[1]), index_of(t[2])});
    }
    plan.rounds.push_back(std::move(round));
  }
  as_parse_error("plan", [&] {
    plan.validate();
    return 0;
  });
  for (const auto& r : plan.rounds) plan.boost_count += static_cast<int>(r.triples.size());
  if (j.contains("routing_swaps")) plan.routing_swaps = field<long long>(j, "routing_swaps", "plan");
  plan.boost_gate_count = static_cast<long long>(plan.boost_count) * kBoostGateCount;
  plan.total_gate_count = plan.boost_gate_count + kSwapGateCount * plan.routing_swaps;
  return plan;
}

}  // namespace coolspin
