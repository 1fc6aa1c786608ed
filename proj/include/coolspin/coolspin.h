/*
 * C interface to the coolspin library.
 *
 * Every function returns a cs_status. On failure the out-parameters are left
 * untouched and cs_last_error() describes the problem (thread-local).
 * Handles are opaque; release each with its matching *_free function.
 * Strings returned through char** are owned by the caller and released with
 * cs_string_free.
 */
#ifndef COOLSPIN_H
#define COOLSPIN_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(COOLSPIN_BUILDING)
#    define CS_API __declspec(dllexport)
#  else
#    define CS_API __declspec(dllimport)
#  endif
#else
#  define CS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_PARSE = 2,
  CS_ERR_INFEASIBLE = 3,
  CS_ERR_CAPACITY = 4,
  CS_ERR_IO = 5,
  CS_ERR_INTERNAL = 6
} cs_status;

typedef struct cs_system cs_system;
typedef struct cs_state cs_state;
typedef struct cs_circuit cs_circuit;
typedef struct cs_sequence cs_sequence;
typedef struct cs_plan cs_plan;

typedef struct cs_projection {
  double a_initial;
  double a_max;
  double enhancement;
} cs_projection;

typedef struct cs_boost_report {
  double eps_a;
  double eps_b;
  double eps_c;
  double enhancement;
  int gate_count;
} cs_boost_report;

typedef struct cs_line {
  double freq_hz;
  double amplitude;
} cs_line;

typedef struct cs_duration_model {
  double pulse90_s;
  double pulse180_s;
} cs_duration_model;

enum {
  CS_PLAN_RECYCLE = 1 << 0,
  CS_PLAN_ALL_TO_ALL = 1 << 1
};

typedef enum cs_mode { CS_MODE_EXACT = 0, CS_MODE_APPROX = 1 } cs_mode;

typedef enum cs_toffoli { CS_TOFFOLI_PHASE = 0, CS_TOFFOLI_STANDARD = 1 } cs_toffoli;

CS_API const char* cs_last_error(void);
CS_API const char* cs_version(void);
CS_API void cs_string_free(char* s);
/* Largest spin count for population states (COOLSPIN_MAX_N, default 24). */
CS_API int cs_population_capacity(void);

/* ---- spin systems ---- */
CS_API cs_status cs_system_load(const char* path, cs_system** out);
CS_API cs_status cs_system_parse(const char* json, cs_system** out);
/* C2F3Br with the given initial polarization. */
CS_API cs_status cs_system_c2f3br(double epsilon0, cs_system** out);
CS_API cs_status cs_system_uncoupled(int n, double epsilon0, cs_system** out);
CS_API void cs_system_free(cs_system* sys);
CS_API int cs_system_num_spins(const cs_system* sys);
CS_API double cs_system_epsilon0(const cs_system* sys);
/* Returned pointer lives as long as the system. */
CS_API const char* cs_system_label(const cs_system* sys, int index);
CS_API cs_status cs_system_spin_index(const cs_system* sys, const char* label, int* out);

/* ---- population states ---- */
CS_API cs_status cs_state_thermal(int n, cs_state** out);
CS_API cs_status cs_state_from_pops(int n, const double* pops, size_t len, cs_state** out);
CS_API cs_status cs_state_iz(int n, int spin, cs_state** out);
CS_API cs_status cs_state_load(const char* path, cs_state** out);
CS_API cs_status cs_state_save(const cs_state* state, const char* path);
CS_API void cs_state_free(cs_state* state);
CS_API int cs_state_num_spins(const cs_state* state);
CS_API size_t cs_state_dim(const cs_state* state);
/* Copies min(len, dim) entries. */
CS_API cs_status cs_state_pops(const cs_state* state, double* buf, size_t len);
CS_API cs_status cs_state_polarization(const cs_state* state, int spin, double* out);
/* Applies a circuit of NOT/CNOT/FREDKIN/TOFFOLI gates. */
CS_API cs_status cs_state_apply_circuit(const cs_state* state, const cs_circuit* circuit,
                                        cs_state** out);

/* ---- scalar quantities and bounds ---- */
CS_API cs_status cs_entropy_binary(double eps, double* out);
CS_API cs_status cs_thermal_polarization(double larmor_hz, double temperature_k, double* out);
CS_API cs_status cs_entropy_bound_kmax(double n, double eps0, double* out);
CS_API cs_status cs_max_projection(const cs_state* rho, const cs_state* target,
                                   cs_projection* out);
CS_API cs_status cs_brute_force_max_projection(const cs_state* rho, const cs_state* target,
                                               double* out);
/* Coefficient of rho on target and norm of the orthogonal remainder. */
CS_API cs_status cs_decompose(const cs_state* rho, const cs_state* target, double* a,
                              double* b_norm);

/* ---- boosting ---- */
CS_API cs_status cs_boost_exact(double eps, cs_boost_report* out);
CS_API cs_status cs_conditional_polarization(double eps, double* cond0, double* cond1);

/* ---- circuits ---- */
CS_API cs_status cs_circuit_boost(cs_circuit** out);
CS_API cs_status cs_circuit_parse(const char* text, const cs_system* sys, cs_circuit** out);
CS_API cs_status cs_circuit_load(const char* path, const cs_system* sys, cs_circuit** out);
CS_API void cs_circuit_free(cs_circuit* circuit);
CS_API size_t cs_circuit_num_gates(const cs_circuit* circuit);

/* ---- pulse compilation ---- */
CS_API void cs_duration_model_default(cs_duration_model* out);
CS_API cs_status cs_compile(const cs_circuit* circuit, const cs_system* sys,
                            const cs_duration_model* model, cs_toffoli toffoli,
                            cs_sequence** out);
CS_API void cs_sequence_free(cs_sequence* seq);
CS_API double cs_sequence_total_duration(const cs_sequence* seq);
CS_API double cs_sequence_delay_time(const cs_sequence* seq);
CS_API size_t cs_sequence_num_events(const cs_sequence* seq);
CS_API cs_status cs_sequence_to_json(const cs_sequence* seq, char** out);
/* Simulates the sequence and compares |V| with |U| of the source circuit. */
CS_API cs_status cs_sequence_verify(const cs_sequence* seq, const cs_circuit* circuit,
                                    int* pattern_equal);

/* ---- cooling plans ---- */
/* target_eps <= 0 plans until no pool can form another triple. */
CS_API cs_status cs_plan_rounds(int n, double eps0, double target_eps, unsigned flags,
                                cs_plan** out);
CS_API cs_status cs_plan_parse(const char* json, cs_plan** out);
CS_API void cs_plan_free(cs_plan* plan);
CS_API int cs_plan_num_spins(const cs_plan* plan);
CS_API size_t cs_plan_num_rounds(const cs_plan* plan);
CS_API size_t cs_plan_round_size(const cs_plan* plan, size_t round);
CS_API long long cs_plan_total_gates(const cs_plan* plan);
CS_API long long cs_plan_routing_swaps(const cs_plan* plan);
CS_API int cs_plan_coldest_spin(const cs_plan* plan);
CS_API cs_status cs_plan_to_json(const cs_plan* plan, char** out);
/* Writes one polarization per spin into buf (len >= num_spins). */
CS_API cs_status cs_plan_simulate(const cs_plan* plan, cs_mode mode, double* buf, size_t len);
/* Coldest live polarization after each round (len >= num_rounds). */
CS_API cs_status cs_plan_round_trace(const cs_plan* plan, cs_mode mode, double* buf,
                                     size_t len);
/* Shannon entropy of the exact joint state before and after the plan. */
CS_API cs_status cs_plan_entropy(const cs_plan* plan, double* before, double* after);

/* ---- spectra ---- */
/* Writes up to cap lines; *count receives the full line count. */
CS_API cs_status cs_spectrum_readout(const cs_state* state, const cs_system* sys, int spin,
                                     cs_line* buf, size_t cap, size_t* count);
CS_API cs_status cs_spectrum_csv(const cs_state* state, const cs_system* sys, int spin,
                                 char** out);
CS_API cs_status cs_spectrum_mean_enhancement(const cs_state* after, const cs_state* before,
                                              const cs_system* sys, int spin, double* out);

#ifdef __cplusplus
}
#endif

#endif /* COOLSPIN_H */
