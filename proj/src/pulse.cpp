#include "coolspin/pulse.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "coolspin/error.hpp"

namespace coolspin {

namespace {

using std::numbers::pi;

double deg2rad(double deg) { return deg * pi / 180.0; }

double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  // fmod of e.g. -1e-17 lands on 360.0 after the shift.
  return w >= 360.0 ? 0.0 : w;
}

// Appends events for one lowering, pricing them with the duration model.
class Builder {
 public:
  Builder(int n, const DurationModel& model) : model_(model) { seq_.num_spins = n; }

  void pulse(int spin, double phase_deg, double angle_deg) {
    if (angle_deg == 0.0) return;
    if (angle_deg < 0.0) {
      angle_deg = -angle_deg;
      phase_deg += 180.0;
    }
    seq_.events.push_back(SelectivePulse{spin, wrap_degrees(phase_deg), angle_deg,
                                         model_.pulse_duration(angle_deg)});
  }
  void rx(int spin, double deg) { pulse(spin, 0.0, deg); }
  void ry(int spin, double deg) { pulse(spin, 90.0, deg); }
  void rz(int spin, double deg) {
    if (deg == 0.0) return;
    seq_.events.push_back(ZRotation{spin, deg, model_.zrotation_duration(deg)});
  }
  void delay(double t) {
    if (t > 0.0) seq_.events.push_back(Delay{t});
  }
  void append(const PulseSequence& other) { seq_.append(other); }

  PulseSequence take() { return std::move(seq_); }

 private:
  const DurationModel& model_;
  PulseSequence seq_;
};

void check_spin(const SpinSystem& sys, int s) {
  require(s >= 0 && s < sys.size(), "spin index " + std::to_string(s) + " out of range");
}

// exp(-i theta (1/2 - Iz^c) Iz^t) = Rz_t(theta/2) exp(-i (-theta/2) 2 Iz^c Iz^t)
PulseSequence lower_crz(int c, int t, double deg, const SpinSystem& sys,
                        const DurationModel& model) {
  Builder b(sys.size(), model);
  b.rz(t, deg / 2.0);
  b.append(lower_zz(c, t, -deg2rad(deg) / 2.0, sys, model));
  return b.take();
}

// Ry(90) maps Iz onto Ix: CRx = Ry(90) CRz Ry(-90).
PulseSequence lower_crx(int c, int t, double deg, const SpinSystem& sys,
                        const DurationModel& model) {
  Builder b(sys.size(), model);
  b.ry(t, -90.0);
  b.append(lower_crz(c, t, deg, sys, model));
  b.ry(t, 90.0);
  return b.take();
}

// Rx(-90) maps Iz onto Iy: CRy = Rx(-90) CRz Rx(90).
PulseSequence lower_cry(int c, int t, double deg, const SpinSystem& sys,
                        const DurationModel& model) {
  Builder b(sys.size(), model);
  b.rx(t, 90.0);
  b.append(lower_crz(c, t, deg, sys, model));
  b.rx(t, -90.0);
  return b.take();
}

// 2x2 operator on one spin, optionally only where all control bits are set.
void apply_local(ComplexMatrix& u, int n, int spin, const Eigen::Matrix2cd& m,
                 std::size_t control_mask = 0) {
  const std::size_t bit = spin_mask(n, spin);
  const auto dim = static_cast<std::size_t>(u.rows());
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & bit) || (i & control_mask) != control_mask) continue;
    const std::size_t j = i | bit;
    Eigen::RowVectorXcd r0 = u.row(static_cast<Eigen::Index>(i));
    Eigen::RowVectorXcd r1 = u.row(static_cast<Eigen::Index>(j));
    u.row(static_cast<Eigen::Index>(i)) = m(0, 0) * r0 + m(0, 1) * r1;
    u.row(static_cast<Eigen::Index>(j)) = m(1, 0) * r0 + m(1, 1) * r1;
  }
}

Eigen::Matrix2cd transverse_rotation(double phase_deg, double angle_deg) {
  const double half = deg2rad(angle_deg) / 2.0;
  const double phi = deg2rad(phase_deg);
  const complex c(std::cos(half), 0.0);
  const complex s = complex(0.0, -std::sin(half));
  Eigen::Matrix2cd m;
  m << c, s * std::polar(1.0, -phi), s * std::polar(1.0, phi), c;
  return m;
}

Eigen::Matrix2cd z_rotation(double angle_deg) {
  const double half = deg2rad(angle_deg) / 2.0;
  Eigen::Matrix2cd m;
  m << std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sequence containers

double event_duration(const PulseEvent& e) {
  return std::visit(
      [](const auto& ev) -> double {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, FrameShift>) {
          return 0.0;
        } else {
          return ev.duration_s;
        }
      },
      e);
}

double PulseSequence::total_duration_s() const {
  double t = 0.0;
  for (const auto& e : events) t += event_duration(e);
  return t;
}

double PulseSequence::delay_time_s() const {
  double t = 0.0;
  for (const auto& e : events) {
    if (const auto* d = std::get_if<Delay>(&e)) t += d->duration_s;
  }
  return t;
}

std::size_t PulseSequence::pulse_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto& e) {
    return std::holds_alternative<SelectivePulse>(e);
  }));
}

void PulseSequence::append(const PulseSequence& other) {
  require(other.num_spins == num_spins, "pulse sequence spin count mismatch");
  events.insert(events.end(), other.events.begin(), other.events.end());
}

void PulseSequence::validate() const {
  require(num_spins >= 1, "pulse sequence: spin count must be >= 1");
  for (const auto& e : events) {
    const double d = event_duration(e);
    require(std::isfinite(d) && d >= 0.0, "pulse sequence: negative or non-finite duration");
    std::visit(
        [&](const auto& ev) {
          using T = std::decay_t<decltype(ev)>;
          if constexpr (!std::is_same_v<T, Delay>) {
            require(ev.spin >= 0 && ev.spin < num_spins, "pulse sequence: spin out of range");
          }
        },
        e);
  }
}

double DurationModel::pulse_duration(double angle_deg) const {
  return std::abs(angle_deg) <= 90.0 ? pulse90_s : pulse180_s;
}

double DurationModel::zrotation_duration(double angle_deg) const {
  return 2.0 * pulse90_s + pulse_duration(angle_deg);
}

void DurationModel::validate() const {
  require(pulse90_s > 0.0 && std::isfinite(pulse90_s), "duration model: pulse90_s must be > 0");
  require(pulse180_s > 0.0 && std::isfinite(pulse180_s), "duration model: pulse180_s must be > 0");
}

double BlochSiegert::at(int pulsed, int spin) const {
  if (shift_deg.empty()) return 0.0;
  return shift_deg.at(pulsed).at(spin);
}

void BlochSiegert::validate(int n) const {
  if (shift_deg.empty()) return;
  require(static_cast<int>(shift_deg.size()) == n, "bloch-siegert: expected n rows");
  for (const auto& row : shift_deg) {
    require(static_cast<int>(row.size()) == n, "bloch-siegert: expected n columns");
    for (double v : row) require(std::isfinite(v), "bloch-siegert: non-finite entry");
  }
}

// ---------------------------------------------------------------------------
// Gate-level passes

std::vector<Gate> lower_fredkin(int c, int q1, int q2) {
  require(c != q1 && c != q2 && q1 != q2, "FREDKIN: duplicate operands");
  return {Gate::cnot(q2, q1), Gate::toffoli(q1, c, q2), Gate::cnot(q2, q1)};
}

Circuit expand_fredkin_pass(const Circuit& circuit) {
  Circuit out{circuit.num_spins, {}};
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::kFredkin) {
      for (auto& h : lower_fredkin(g.operands[0], g.operands[1], g.operands[2])) {
        out.gates.push_back(std::move(h));
      }
    } else {
      out.gates.push_back(g);
    }
  }
  return out;
}

Circuit substitute_toffoli_pass(const Circuit& circuit, ToffoliLowering mode) {
  Circuit out{circuit.num_spins, {}};
  for (const auto& g : circuit.gates) {
    if (g.kind != GateKind::kToffoli) {
      out.gates.push_back(g);
      continue;
    }
    const int c1 = g.operands[0], c2 = g.operands[1], t = g.operands[2];
    if (mode == ToffoliLowering::kPhase) {
      out.gates.push_back(Gate::cry(c2, t, 90.0));
      out.gates.push_back(Gate::crz(c1, t, 180.0));
      out.gates.push_back(Gate::cry(c2, t, -90.0));
    } else {
      out.gates.push_back(Gate::crx(c2, t, 90.0));
      out.gates.push_back(Gate::cnot(c1, c2));
      out.gates.push_back(Gate::crx(c2, t, -90.0));
      out.gates.push_back(Gate::cnot(c1, c2));
      out.gates.push_back(Gate::crx(c1, t, 90.0));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pulse-level lowerings

PulseSequence lower_zz(int p, int q, double angle_rad, const SpinSystem& sys,
                       const DurationModel& model) {
  check_spin(sys, p);
  check_spin(sys, q);
  require(p != q, "coupled evolution needs two distinct spins");
  const double j = sys.coupling(p, q);
  if (j == 0.0) {
    fail(ErrorCode::kInvalidArgument, "missing coupling: J(" + sys.labels[p] + ", " +
                                          sys.labels[q] + ") is zero");
  }
  Builder b(sys.size(), model);
  if (angle_rad == 0.0) return b.take();

  // exp(-i 2 pi J t Iz Iz) = exp(-i (pi J t) 2 Iz Iz)
  const double total = std::abs(angle_rad) / (pi * std::abs(j));
  const bool invert = (angle_rad > 0.0) != (j > 0.0);

  // Every other coupled spin follows its own Walsh sign pattern so that its
  // couplings (to p, q and to each other) average to zero.
  std::vector<int> others;
  for (int r = 0; r < sys.size(); ++r) {
    if (r == p || r == q) continue;
    bool coupled = false;
    for (int s = 0; s < sys.size(); ++s) coupled = coupled || sys.j_hz[r][s] != 0.0;
    if (coupled) others.push_back(r);
  }
  unsigned slots = 1;
  while (slots < others.size() + 1) slots <<= 1;

  if (invert) b.rx(p, 180.0);
  std::vector<int> sign(others.size(), 1);
  for (unsigned s = 0; s < slots; ++s) {
    for (std::size_t k = 0; k < others.size(); ++k) {
      const int want = (std::popcount(static_cast<unsigned>(k + 1) & s) & 1) ? -1 : 1;
      if (want != sign[k]) {
        b.rx(others[k], 180.0);
        sign[k] = want;
      }
    }
    b.delay(total / slots);
  }
  for (std::size_t k = 0; k < others.size(); ++k) {
    if (sign[k] < 0) b.rx(others[k], 180.0);
  }
  if (invert) b.rx(p, 180.0);
  return b.take();
}

PulseSequence lower_cnot(int control, int target, const SpinSystem& sys,
                         const DurationModel& model) {
  check_spin(sys, control);
  check_spin(sys, target);
  require(control != target, "CNOT: duplicate operands");
  // CRx(180) is controlled(-iX); Rz(90) on the control (a frame change)
  // removes the -i and leaves the exact CNOT.
  Builder b(sys.size(), model);
  b.append(lower_crx(control, target, 180.0, sys, model));
  b.rz(control, 90.0);
  return b.take();
}

PulseSequence lower_toffoli_phase(int c1, int c2, int target, const SpinSystem& sys,
                                  const DurationModel& model) {
  Builder b(sys.size(), model);
  const Circuit sub = substitute_toffoli_pass(Circuit{sys.size(), {Gate::toffoli(c1, c2, target)}},
                                              ToffoliLowering::kPhase);
  validate_gate(Gate::toffoli(c1, c2, target), sys.size());
  for (const auto& g : sub.gates) b.append(lower_gate(g, sys, model));
  return b.take();
}

PulseSequence lower_toffoli_standard(int c1, int c2, int target, const SpinSystem& sys,
                                     const DurationModel& model) {
  Builder b(sys.size(), model);
  validate_gate(Gate::toffoli(c1, c2, target), sys.size());
  const Circuit sub = substitute_toffoli_pass(Circuit{sys.size(), {Gate::toffoli(c1, c2, target)}},
                                              ToffoliLowering::kStandard);
  for (const auto& g : sub.gates) b.append(lower_gate(g, sys, model));
  return b.take();
}

PulseSequence lower_gate(const Gate& g, const SpinSystem& sys, const DurationModel& model) {
  validate_gate(g, sys.size());
  const auto& o = g.operands;
  Builder b(sys.size(), model);
  switch (g.kind) {
    case GateKind::kNot:
      b.rx(o[0], 180.0);
      break;
    case GateKind::kCnot:
      b.append(lower_cnot(o[0], o[1], sys, model));
      break;
    case GateKind::kFredkin:
      for (const auto& h : lower_fredkin(o[0], o[1], o[2])) b.append(lower_gate(h, sys, model));
      break;
    case GateKind::kToffoli:
      b.append(lower_toffoli_phase(o[0], o[1], o[2], sys, model));
      break;
    case GateKind::kRx:
      b.rx(o[0], g.angle_deg);
      break;
    case GateKind::kRy:
      b.ry(o[0], g.angle_deg);
      break;
    case GateKind::kRz:
      b.rz(o[0], g.angle_deg);
      break;
    case GateKind::kCRx:
      b.append(lower_crx(o[0], o[1], g.angle_deg, sys, model));
      break;
    case GateKind::kCRy:
      b.append(lower_cry(o[0], o[1], g.angle_deg, sys, model));
      break;
    case GateKind::kCRz:
      b.append(lower_crz(o[0], o[1], g.angle_deg, sys, model));
      break;
  }
  return b.take();
}

// ---------------------------------------------------------------------------
// Sequence-level passes

PulseSequence insert_bloch_siegert_corrections(const PulseSequence& seq,
                                               const BlochSiegert& bs) {
  bs.validate(seq.num_spins);
  PulseSequence out;
  out.num_spins = seq.num_spins;
  out.trailing_frame_deg = seq.trailing_frame_deg;
  for (const auto& e : seq.events) {
    out.events.push_back(e);
    const auto* p = std::get_if<SelectivePulse>(&e);
    if (!p || bs.empty()) continue;
    for (int j = 0; j < seq.num_spins; ++j) {
      if (j == p->spin) continue;
      const double shift = bs.at(p->spin, j);
      if (shift != 0.0) out.events.push_back(FrameShift{j, -shift});
    }
  }
  return out;
}

PulseSequence elide_z_rotations(const PulseSequence& seq) {
  seq.validate();
  std::vector<double> frame(seq.num_spins, 0.0);
  PulseSequence out;
  out.num_spins = seq.num_spins;
  for (const auto& e : seq.events) {
    if (const auto* z = std::get_if<ZRotation>(&e)) {
      frame[z->spin] += z->angle_deg;
    } else if (const auto* f = std::get_if<FrameShift>(&e)) {
      frame[f->spin] += f->phase_deg;
    } else if (const auto* p = std::get_if<SelectivePulse>(&e)) {
      SelectivePulse moved = *p;
      moved.phase_deg = wrap_degrees(p->phase_deg - frame[p->spin]);
      out.events.push_back(moved);
    } else {
      out.events.push_back(e);
    }
  }
  out.trailing_frame_deg.resize(seq.num_spins);
  for (int k = 0; k < seq.num_spins; ++k) {
    const double prior =
        seq.trailing_frame_deg.empty() ? 0.0 : seq.trailing_frame_deg.at(k);
    out.trailing_frame_deg[k] = wrap_degrees(prior + frame[k]);
  }
  return out;
}

PulseSequence compile(const Circuit& circuit, const SpinSystem& sys,
                      const CompileOptions& options) {
  sys.validate();
  circuit.validate();
  require(circuit.num_spins == sys.size(), "compile: circuit and spin system sizes differ");
  options.durations.validate();
  options.bloch_siegert.validate(sys.size());

  const Circuit expanded =
      substitute_toffoli_pass(expand_fredkin_pass(circuit), options.toffoli);
  PulseSequence seq;
  seq.num_spins = sys.size();
  for (const auto& g : expanded.gates) seq.append(lower_gate(g, sys, options.durations));
  if (!options.bloch_siegert.empty()) {
    seq = insert_bloch_siegert_corrections(seq, options.bloch_siegert);
  }
  if (options.elide_z) seq = elide_z_rotations(seq);
  return seq;
}

// ---------------------------------------------------------------------------
// Verification

Unitary simulate_sequence(const PulseSequence& seq, const SpinSystem& sys,
                          const BlochSiegert& bs) {
  const int n = sys.size();
  require(seq.num_spins == n, "simulate_sequence: spin count mismatch");
  if (n > kDenseCapacity) {
    fail(ErrorCode::kCapacity, "simulate_sequence: " + std::to_string(n) +
                                   " spins exceeds capacity of " +
                                   std::to_string(kDenseCapacity));
  }
  seq.validate();
  bs.validate(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);

  // Eigenvalue of sum_{p<q} J_pq Iz^p Iz^q on each basis state.
  std::vector<double> zz(static_cast<std::size_t>(dim), 0.0);
  for (std::size_t i = 0; i < zz.size(); ++i) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double mp = spin_bit(i, n, p) ? -0.5 : 0.5;
        const double mq = spin_bit(i, n, q) ? -0.5 : 0.5;
        zz[i] += sys.j_hz[p][q] * mp * mq;
      }
    }
  }

  for (const auto& e : seq.events) {
    if (const auto* p = std::get_if<SelectivePulse>(&e)) {
      apply_local(u, n, p->spin, transverse_rotation(p->phase_deg, p->angle_deg));
      for (int j = 0; j < n; ++j) {
        if (j != p->spin && bs.at(p->spin, j) != 0.0) {
          apply_local(u, n, j, z_rotation(bs.at(p->spin, j)));
        }
      }
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      for (Eigen::Index i = 0; i < dim; ++i) {
        u.row(i) *= std::polar(1.0, -2.0 * pi * d->duration_s * zz[static_cast<std::size_t>(i)]);
      }
    } else if (const auto* f = std::get_if<FrameShift>(&e)) {
      apply_local(u, n, f->spin, z_rotation(f->phase_deg));
    } else if (const auto* z = std::get_if<ZRotation>(&e)) {
      apply_local(u, n, z->spin, z_rotation(z->angle_deg));
    }
  }
  return Unitary(n, std::move(u));
}

Unitary circuit_unitary(const Circuit& circuit) {
  circuit.validate();
  const int n = circuit.num_spins;
  if (n > kDenseCapacity) {
    fail(ErrorCode::kCapacity, "circuit_unitary: too many spins for a dense matrix");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : circuit.gates) {
    const auto& o = g.operands;
    if (g.is_reversible()) {
      const auto perm = gate_permutation(g, n);
      ComplexMatrix next(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) next.row(perm(static_cast<std::size_t>(i))) = u.row(i);
      u = std::move(next);
      continue;
    }
    switch (g.kind) {
      case GateKind::kRx: apply_local(u, n, o[0], transverse_rotation(0.0, g.angle_deg)); break;
      case GateKind::kRy: apply_local(u, n, o[0], transverse_rotation(90.0, g.angle_deg)); break;
      case GateKind::kRz: apply_local(u, n, o[0], z_rotation(g.angle_deg)); break;
      case GateKind::kCRx:
        apply_local(u, n, o[1], transverse_rotation(0.0, g.angle_deg), spin_mask(n, o[0]));
        break;
      case GateKind::kCRy:
        apply_local(u, n, o[1], transverse_rotation(90.0, g.angle_deg), spin_mask(n, o[0]));
        break;
      case GateKind::kCRz:
        apply_local(u, n, o[1], z_rotation(g.angle_deg), spin_mask(n, o[0]));
        break;
      default:
        break;
    }
  }
  return Unitary(n, std::move(u));
}

bool phase_pattern_equal(const Unitary& v, const Unitary& u, double tol) {
  return phase_pattern_equal(v.matrix(), u.matrix(), tol);
}

bool phase_pattern_equal(const ComplexMatrix& v, const ComplexMatrix& u, double tol) {
  if (v.rows() != u.rows() || v.cols() != u.cols()) return false;
  return (v.cwiseAbs() - u.cwiseAbs()).cwiseAbs().maxCoeff() <= tol;
}

bool equal_up_to_global_phase(const Unitary& v, const Unitary& u, double tol) {
  if (v.num_spins() != u.num_spins()) return false;
  Eigen::Index r = 0, c = 0;
  u.matrix().cwiseAbs().maxCoeff(&r, &c);
  const complex ratio = v.matrix()(r, c) / u.matrix()(r, c);
  if (std::abs(std::abs(ratio) - 1.0) > tol) return false;
  const complex phase = ratio / std::abs(ratio);
  return (v.matrix() - phase * u.matrix()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace coolspin
