#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coolspin/spin_core.hpp"

namespace coolspin {

enum class GateKind {
  // Reversible (permutation) gates.
  kNot,
  kCnot,
  kFredkin,
  kToffoli,
  // Rotations, angles in degrees.
  kRx,
  kRy,
  kRz,
  kCRx,
  kCRy,
  kCRz,
};

// Operands are ordered controls first, target(s) last:
//   NOT t | CNOT c t | FREDKIN c q1 q2 | TOFFOLI c1 c2 t
//   RX/RY/RZ t | CRX/CRY/CRZ c t
struct Gate {
  GateKind kind = GateKind::kNot;
  std::vector<int> operands;
  double angle_deg = 0.0;

  static Gate not_(int t) { return {GateKind::kNot, {t}}; }
  static Gate cnot(int c, int t) { return {GateKind::kCnot, {c, t}}; }
  static Gate fredkin(int c, int q1, int q2) { return {GateKind::kFredkin, {c, q1, q2}}; }
  static Gate toffoli(int c1, int c2, int t) { return {GateKind::kToffoli, {c1, c2, t}}; }
  static Gate rx(int t, double deg) { return {GateKind::kRx, {t}, deg}; }
  static Gate ry(int t, double deg) { return {GateKind::kRy, {t}, deg}; }
  static Gate rz(int t, double deg) { return {GateKind::kRz, {t}, deg}; }
  static Gate crx(int c, int t, double deg) { return {GateKind::kCRx, {c, t}, deg}; }
  static Gate cry(int c, int t, double deg) { return {GateKind::kCRy, {c, t}, deg}; }
  static Gate crz(int c, int t, double deg) { return {GateKind::kCRz, {c, t}, deg}; }

  bool is_reversible() const;
  bool operator==(const Gate&) const = default;
};

std::string_view gate_name(GateKind kind);
int gate_arity(GateKind kind);

// Throws on wrong operand count, duplicates, or operands outside [0, n).
void validate_gate(const Gate& g, int n);

struct Circuit {
  int num_spins = 0;
  std::vector<Gate> gates;

  void validate() const;
  bool is_reversible() const;
};

// Permutation of the 2^n basis implementing a reversible gate.
BasisPermutation gate_permutation(const Gate& g, int n);
// Composite permutation of an all-reversible circuit.
BasisPermutation circuit_permutation(const Circuit& c);

// In-place application of a reversible gate to a 2^n vector (populations or
// probabilities). Every reversible gate is an involution, so this swaps pairs.
void apply_gate_inplace(std::span<double> values, int n, const Gate& g);

// One gate per line, e.g. "CNOT b c", "FREDKIN c a b", "RY b 90". Blank
// lines and '#' comments are ignored. Operands are resolved against the
// system's labels.
Circuit parse_circuit(std::string_view text, const SpinSystem& sys);
Circuit load_circuit(const std::string& path, const SpinSystem& sys);
std::string format_circuit(const Circuit& c, const SpinSystem& sys);

}  // namespace coolspin
