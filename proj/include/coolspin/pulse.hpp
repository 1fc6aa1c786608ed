#pragma once

#include <variant>
#include <vector>

#include "coolspin/circuit.hpp"
#include "coolspin/spin_core.hpp"

namespace coolspin {

// Ideal selective rotation by angle_deg about the transverse axis at
// phase_deg (0 = +x, 90 = +y).
struct SelectivePulse {
  int spin = 0;
  double phase_deg = 0.0;
  double angle_deg = 0.0;
  double duration_s = 0.0;
  bool operator==(const SelectivePulse&) const = default;
};

// Free evolution under the weak-coupling Hamiltonian.
struct Delay {
  double duration_s = 0.0;
  bool operator==(const Delay&) const = default;
};

// Zero-duration change of one spin's rotating frame; acts as Rz(phase_deg).
struct FrameShift {
  int spin = 0;
  double phase_deg = 0.0;
  bool operator==(const FrameShift&) const = default;
};

// z rotation realized with explicit (composite) pulses, before frame
// tracking absorbs it.
struct ZRotation {
  int spin = 0;
  double angle_deg = 0.0;
  double duration_s = 0.0;
  bool operator==(const ZRotation&) const = default;
};

using PulseEvent = std::variant<SelectivePulse, Delay, FrameShift, ZRotation>;

double event_duration(const PulseEvent& e);

struct PulseSequence {
  int num_spins = 0;
  std::vector<PulseEvent> events;
  // Frame phase left on each spin once z rotations have been elided.
  std::vector<double> trailing_frame_deg;

  double total_duration_s() const;
  // Coupled-evolution time only (instantaneous-pulse idealization).
  double delay_time_s() const;
  std::size_t pulse_count() const;
  void append(const PulseSequence& other);
  void validate() const;
};

struct DurationModel {
  double pulse90_s = 2e-3;
  double pulse180_s = 3e-3;

  // Pulses up to 90 degrees take pulse90_s, larger ones pulse180_s.
  double pulse_duration(double angle_deg) const;
  // Explicit z rotation as the composite X(-90) Y(theta) X(90).
  double zrotation_duration(double angle_deg) const;
  void validate() const;
};

// Phase (degrees) acquired by spin j in its own frame while spin k is
// pulsed: shift_deg[k][j]. Empty means no shifts.
struct BlochSiegert {
  std::vector<std::vector<double>> shift_deg;

  bool empty() const { return shift_deg.empty(); }
  double at(int pulsed, int spin) const;
  void validate(int n) const;
};

enum class ToffoliLowering {
  // Correct up to phases: CRy(c2, 90) CRz(c1, 180) CRy(c2, -90); 1/J.
  kPhase,
  // Exact up to phases via three controlled-V and two CNOTs; 7/4J.
  kStandard,
};

struct CompileOptions {
  DurationModel durations;
  ToffoliLowering toffoli = ToffoliLowering::kPhase;
  BlochSiegert bloch_siegert;
  bool elide_z = true;
};

// --- gate-level passes -----------------------------------------------------

// FREDKIN(c; q1, q2) -> CNOT(q2 -> q1), TOFFOLI(q1, c -> q2), CNOT(q2 -> q1).
std::vector<Gate> lower_fredkin(int c, int q1, int q2);
Circuit expand_fredkin_pass(const Circuit& circuit);
// Replaces every TOFFOLI by its controlled-rotation construction.
Circuit substitute_toffoli_pass(const Circuit& circuit, ToffoliLowering mode);

// --- pulse-level lowerings ---------------------------------------------------

// exp(-i angle_rad 2 Iz^p Iz^q) with every other coupling refocused.
PulseSequence lower_zz(int p, int q, double angle_rad, const SpinSystem& sys,
                       const DurationModel& model);
PulseSequence lower_cnot(int control, int target, const SpinSystem& sys,
                         const DurationModel& model);
PulseSequence lower_toffoli_phase(int c1, int c2, int target, const SpinSystem& sys,
                                  const DurationModel& model);
PulseSequence lower_toffoli_standard(int c1, int c2, int target, const SpinSystem& sys,
                                     const DurationModel& model);
PulseSequence lower_gate(const Gate& g, const SpinSystem& sys, const DurationModel& model);

// Follows every pulse with FrameShift events undoing its Bloch-Siegert phase.
PulseSequence insert_bloch_siegert_corrections(const PulseSequence& seq,
                                               const BlochSiegert& bs);

// Absorbs ZRotation and FrameShift events into the phases of later pulses on
// the same spin. Convention: Rz(theta) then a pulse at phase phi becomes the
// pulse at phase phi - theta.
PulseSequence elide_z_rotations(const PulseSequence& seq);

// expand Fredkin -> substitute Toffoli -> lower -> Bloch-Siegert corrections
// -> elide z rotations.
PulseSequence compile(const Circuit& circuit, const SpinSystem& sys,
                      const CompileOptions& options = {});

// --- verification ------------------------------------------------------------

// Composite propagator with instantaneous pulses and ZZ evolution during
// delays (multiply-rotating frame). n <= 8.
Unitary simulate_sequence(const PulseSequence& seq, const SpinSystem& sys,
                          const BlochSiegert& bs = {});

// Ideal unitary of a circuit (permutation matrices for reversible gates).
Unitary circuit_unitary(const Circuit& circuit);

// |v_ij| == |u_ij| for all entries within tol.
bool phase_pattern_equal(const Unitary& v, const Unitary& u, double tol = 1e-8);
// Same check on raw matrices, which need not be unitary.
bool phase_pattern_equal(const ComplexMatrix& v, const ComplexMatrix& u, double tol = 1e-8);

// Equal up to a global phase within tol.
bool equal_up_to_global_phase(const Unitary& v, const Unitary& u, double tol = 1e-8);

}  // namespace coolspin
