// coolspin command-line front end. Talks to the library only through the C API.
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coolspin/coolspin.h"

namespace {

// Exit codes: 0 ok, 2 bad input, 3 infeasible, 4 capacity, 1 anything else.
int exit_code(cs_status s) {
  switch (s) {
    case CS_OK: return 0;
    case CS_ERR_INVALID_ARGUMENT:
    case CS_ERR_PARSE:
    case CS_ERR_IO: return 2;
    case CS_ERR_INFEASIBLE: return 3;
    case CS_ERR_CAPACITY: return 4;
    default: return 1;
  }
}

struct Failure {
  cs_status status;
  bool reported = false;
};

void check(cs_status s) {
  if (s != CS_OK) throw Failure{s};
}

void usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  throw Failure{CS_ERR_INVALID_ARGUMENT, true};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using System = std::unique_ptr<cs_system, Deleter<cs_system, cs_system_free>>;
using State = std::unique_ptr<cs_state, Deleter<cs_state, cs_state_free>>;
using Circuit = std::unique_ptr<cs_circuit, Deleter<cs_circuit, cs_circuit_free>>;
using Sequence = std::unique_ptr<cs_sequence, Deleter<cs_sequence, cs_sequence_free>>;
using Plan = std::unique_ptr<cs_plan, Deleter<cs_plan, cs_plan_free>>;

std::string take_string(char* s) {
  std::string out(s);
  cs_string_free(s);
  return out;
}

// 12 significant digits everywhere; negative zero prints as 0.
std::string num(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void kv(const std::string& key, double value) {
  std::printf("%s = %s\n", key.c_str(), num(value).c_str());
}

void kv(const std::string& key, const std::string& value) {
  std::printf("%s = %s\n", key.c_str(), value.c_str());
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += num(v[i]);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
    throw Failure{CS_ERR_IO, true};
  }
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

System load_system(const std::string& path) {
  cs_system* sys = nullptr;
  check(cs_system_load(path.c_str(), &sys));
  return System(sys);
}

int spin_index(const cs_system* sys, const std::string& label) {
  int j = 0;
  check(cs_system_spin_index(sys, label.c_str(), &j));
  return j;
}

std::vector<double> pops_of(const cs_state* s) {
  std::vector<double> v(cs_state_dim(s));
  check(cs_state_pops(s, v.data(), v.size()));
  return v;
}

std::vector<double> polarizations(const cs_state* s) {
  std::vector<double> out(cs_state_num_spins(s));
  for (std::size_t j = 0; j < out.size(); ++j) {
    check(cs_state_polarization(s, static_cast<int>(j), &out[j]));
  }
  return out;
}

State thermal(int n) {
  cs_state* s = nullptr;
  check(cs_state_thermal(n, &s));
  return State(s);
}

State boosted_thermal() {
  cs_circuit* c = nullptr;
  check(cs_circuit_boost(&c));
  Circuit circuit(c);
  State th = thermal(3);
  cs_state* out = nullptr;
  check(cs_state_apply_circuit(th.get(), circuit.get(), &out));
  return State(out);
}

State load_state(const std::string& path) {
  cs_state* s = nullptr;
  check(cs_state_load(path.c_str(), &s));
  return State(s);
}

struct Options {
  std::string system;
  std::string circuit;
  std::string out;
  std::string state;
  std::string spin = "a";
  std::string mode = "approx";
  std::string toffoli = "phase";
  bool recycle = false;
  bool all_to_all = false;
  bool boost = false;
  bool scaling = false;
  double n = 0.0;
  double eps0 = -1.0;
  double target_eps = 0.0;
};

void cmd_bound(const Options& o) {
  System sys = load_system(o.system);
  const int n = cs_system_num_spins(sys.get());
  const int j = spin_index(sys.get(), o.spin);
  State rho = o.state.empty() ? thermal(n) : load_state(o.state);
  cs_state* a = nullptr;
  check(cs_state_iz(cs_state_num_spins(rho.get()), j, &a));
  State target(a);
  cs_projection p{};
  check(cs_max_projection(rho.get(), target.get(), &p));
  const double count = o.n > 0.0 ? o.n : n;
  const double eps0 = o.eps0 >= 0.0 ? o.eps0 : cs_system_epsilon0(sys.get());
  double kmax = 0.0;
  check(cs_entropy_bound_kmax(count, eps0, &kmax));
  kv("spin", o.spin);
  kv("a_initial", p.a_initial);
  kv("a_max", p.a_max);
  kv("enhancement", p.enhancement);
  kv("n", count);
  kv("eps0", eps0);
  kv("k_max", kmax);
}

void cmd_boost(const Options& o) {
  System sys = load_system(o.system);
  if (cs_system_num_spins(sys.get()) != 3) {
    usage_error("boost needs a 3-spin system, got " +
                std::to_string(cs_system_num_spins(sys.get())));
  }
  const double eps = o.eps0 >= 0.0 ? o.eps0 : cs_system_epsilon0(sys.get());
  State before = thermal(3);
  State after = boosted_thermal();
  cs_boost_report r{};
  check(cs_boost_exact(eps, &r));
  kv("pre_diag", join(pops_of(before.get())));
  kv("post_diag", join(pops_of(after.get())));
  kv("pre_polarization", join(polarizations(before.get())));
  kv("post_polarization", join(polarizations(after.get())));
  kv("eps0", eps);
  kv("eps_a", r.eps_a);
  kv("eps_b", r.eps_b);
  kv("eps_c", r.eps_c);
  kv("enhancement", r.enhancement);
  kv("gate_count", static_cast<double>(r.gate_count));
  if (!o.out.empty()) check(cs_state_save(after.get(), o.out.c_str()));
}

unsigned plan_flags(const Options& o) {
  return (o.recycle ? CS_PLAN_RECYCLE : 0u) | (o.all_to_all ? CS_PLAN_ALL_TO_ALL : 0u);
}

void cmd_scaling(const Options& o) {
  const double eps0 = o.eps0 > 0.0 ? o.eps0 : 1e-5;
  std::printf("n,rounds,boost_gates,routing_swaps,total_gates\n");
  std::vector<double> xs, ys;
  for (int n : {3, 9, 27, 81, 243}) {
    cs_plan* p = nullptr;
    check(cs_plan_rounds(n, eps0, 0.0, plan_flags(o), &p));
    Plan plan(p);
    const long long gates = cs_plan_total_gates(plan.get());
    const long long swaps = cs_plan_routing_swaps(plan.get());
    std::printf("%d,%zu,%lld,%lld,%lld\n", n, cs_plan_num_rounds(plan.get()), gates - 3 * swaps,
                swaps, gates);
    xs.push_back(std::log(n));
    ys.push_back(std::log(gates / std::log(n)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  kv("fitted_exponent", sxy / sxx);
}

void cmd_cool(const Options& o) {
  if (o.scaling) return cmd_scaling(o);
  if (o.mode != "exact" && o.mode != "approx") usage_error("--mode must be exact or approx");
  if (o.n < 3 || o.n != std::floor(o.n) || o.n > 1e6) usage_error("--n must be an integer >= 3");
  if (!(o.eps0 > 0.0)) usage_error("--eps0 must be positive");
  const int n = static_cast<int>(o.n);
  cs_plan* p = nullptr;
  check(cs_plan_rounds(n, o.eps0, o.target_eps, plan_flags(o), &p));
  Plan plan(p);
  const std::string json = take_string([&] {
    char* s = nullptr;
    check(cs_plan_to_json(plan.get(), &s));
    return s;
  }());
  if (!o.out.empty()) write_text(o.out, json);

  const std::size_t rounds = cs_plan_num_rounds(plan.get());
  const cs_mode mode = o.mode == "exact" ? CS_MODE_EXACT : CS_MODE_APPROX;
  std::vector<double> trace(rounds), pol(n);
  check(cs_plan_round_trace(plan.get(), mode, trace.data(), trace.size()));
  check(cs_plan_simulate(plan.get(), mode, pol.data(), pol.size()));

  kv("n", static_cast<double>(n));
  kv("eps0", o.eps0);
  kv("target_eps", o.target_eps);
  kv("mode", o.mode);
  kv("rounds", static_cast<double>(rounds));
  for (std::size_t r = 0; r < rounds; ++r) {
    std::printf("round %zu: triples = %zu, coldest = %s\n", r + 1,
                cs_plan_round_size(plan.get(), r), num(trace[r]).c_str());
  }
  const int cold = cs_plan_coldest_spin(plan.get());
  kv("coldest_spin", static_cast<double>(cold));
  kv("coldest_eps", pol[cold]);
  kv("routing_swaps", static_cast<double>(cs_plan_routing_swaps(plan.get())));
  kv("total_gates", static_cast<double>(cs_plan_total_gates(plan.get())));
  if (mode == CS_MODE_EXACT) {
    std::vector<double> approx(n);
    check(cs_plan_simulate(plan.get(), CS_MODE_APPROX, approx.data(), approx.size()));
    double worst = 0.0;
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(pol[j] - approx[j]));
    double h0 = 0, h1 = 0;
    check(cs_plan_entropy(plan.get(), &h0, &h1));
    kv("max_discrepancy", worst);
    kv("entropy_before", h0);
    kv("entropy_after", h1);
  }
  if (o.out.empty()) std::fputs(json.c_str(), stdout);
}

void cmd_compile(const Options& o) {
  if (o.toffoli != "phase" && o.toffoli != "standard") {
    usage_error("--toffoli must be phase or standard");
  }
  System sys = load_system(o.system);
  cs_circuit* c = nullptr;
  if (o.circuit.empty()) {
    check(cs_circuit_boost(&c));
  } else {
    check(cs_circuit_load(o.circuit.c_str(), sys.get(), &c));
  }
  Circuit circuit(c);
  cs_duration_model model;
  cs_duration_model_default(&model);
  cs_sequence* s = nullptr;
  check(cs_compile(circuit.get(), sys.get(), &model,
                   o.toffoli == "standard" ? CS_TOFFOLI_STANDARD : CS_TOFFOLI_PHASE, &s));
  Sequence seq(s);
  int ok = 0;
  check(cs_sequence_verify(seq.get(), circuit.get(), &ok));
  char* js = nullptr;
  check(cs_sequence_to_json(seq.get(), &js));
  const std::string json = take_string(js);
  if (!o.out.empty()) write_text(o.out, json);
  kv("gates", static_cast<double>(cs_circuit_num_gates(circuit.get())));
  kv("events", static_cast<double>(cs_sequence_num_events(seq.get())));
  kv("delay_time_s", cs_sequence_delay_time(seq.get()));
  kv("total_duration_s", cs_sequence_total_duration(seq.get()));
  kv("verdict", ok ? "PASS" : "FAIL");
  if (!ok) throw Failure{CS_ERR_INTERNAL, true};
}

void cmd_spectrum(const Options& o) {
  System sys = load_system(o.system);
  const int j = spin_index(sys.get(), o.spin);
  State state = !o.state.empty() ? load_state(o.state)
                : o.boost        ? boosted_thermal()
                                 : thermal(cs_system_num_spins(sys.get()));
  char* csv = nullptr;
  check(cs_spectrum_csv(state.get(), sys.get(), j, &csv));
  const std::string text = take_string(csv);
  if (o.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text(o.out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coolspin: spin-system cooling, bounds, pulse compilation and spectra"};
  app.require_subcommand(1);
  Options o;

  auto* bound = app.add_subcommand("bound", "projection bound and entropy bound");
  bound->add_option("--system", o.system, "spin system JSON")->required();
  bound->add_option("--spin", o.spin, "target spin label (default a)");
  bound->add_option("--state", o.state, "deviation state JSON (default thermal)");
  bound->add_option("--n", o.n, "spin count for k_max (default system size)");
  bound->add_option("--eps0", o.eps0, "polarization for k_max (default from system)");

  auto* boost = app.add_subcommand("boost", "three-spin boost of the thermal state");
  boost->add_option("--system", o.system, "3-spin system JSON")->required();
  boost->add_option("--eps0", o.eps0, "polarization for the exact law (default from system)");
  boost->add_option("--out", o.out, "write the boosted deviation state");

  auto* cool = app.add_subcommand("cool", "plan and simulate multi-round cooling");
  cool->add_option("--n", o.n, "number of spins");
  cool->add_option("--eps0", o.eps0, "initial polarization");
  cool->add_option("--target-eps", o.target_eps, "target polarization (<= 0: run to exhaustion)");
  cool->add_option("--mode", o.mode, "exact or approx (default approx)");
  cool->add_flag("--recycle", o.recycle, "return the middle spin of each triple to its pool");
  cool->add_flag("--all-to-all", o.all_to_all, "skip nearest-neighbour routing cost");
  cool->add_flag("--scaling", o.scaling, "print the gate-count scaling table");
  cool->add_option("--out", o.out, "write the plan JSON here");

  auto* compile = app.add_subcommand("compile", "compile a circuit to a pulse sequence");
  compile->add_option("--system", o.system, "spin system JSON")->required();
  compile->add_option("--circuit", o.circuit, "circuit file (default: boost)");
  compile->add_option("--toffoli", o.toffoli, "phase or standard");
  compile->add_option("--out", o.out, "write the sequence JSON here");

  auto* spectrum = app.add_subcommand("spectrum", "predicted readout spectrum as CSV");
  spectrum->add_option("--system", o.system, "spin system JSON")->required();
  spectrum->add_option("--spin", o.spin, "observed spin label (default a)");
  spectrum->add_option("--state", o.state, "deviation state JSON (default thermal)");
  spectrum->add_flag("--boost", o.boost, "use the boosted thermal state");
  spectrum->add_option("--out", o.out, "write CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (bound->parsed()) cmd_bound(o);
    if (boost->parsed()) cmd_boost(o);
    if (cool->parsed()) cmd_cool(o);
    if (compile->parsed()) cmd_compile(o);
    if (spectrum->parsed()) cmd_spectrum(o);
  } catch (const Failure& f) {
    const char* msg = cs_last_error();
    if (!f.reported && msg && *msg) std::fprintf(stderr, "error: %s\n", msg);
    return exit_code(f.status);
  }
  return 0;
}
