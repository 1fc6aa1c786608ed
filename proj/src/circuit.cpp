#include "coolspin/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coolspin/error.hpp"

namespace coolspin {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  bool has_angle;
};

constexpr std::array<KindInfo, 10> kKinds = {{
    {GateKind::kNot, "NOT", 1, false},
    {GateKind::kCnot, "CNOT", 2, false},
    {GateKind::kFredkin, "FREDKIN", 3, false},
    {GateKind::kToffoli, "TOFFOLI", 3, false},
    {GateKind::kRx, "RX", 1, true},
    {GateKind::kRy, "RY", 1, true},
    {GateKind::kRz, "RZ", 1, true},
    {GateKind::kCRx, "CRX", 2, true},
    {GateKind::kCRy, "CRY", 2, true},
    {GateKind::kCRz, "CRZ", 2, true},
}};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  fail(ErrorCode::kInvalidArgument, "unknown gate kind");
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }
int gate_arity(GateKind kind) { return info(kind).arity; }

bool Gate::is_reversible() const {
  return kind == GateKind::kNot || kind == GateKind::kCnot ||
         kind == GateKind::kFredkin || kind == GateKind::kToffoli;
}

void validate_gate(const Gate& g, int n) {
  const auto& k = info(g.kind);
  const std::string name(k.name);
  require(static_cast<int>(g.operands.size()) == k.arity,
          name + ": expected " + std::to_string(k.arity) + " operands");
  for (std::size_t i = 0; i < g.operands.size(); ++i) {
    require(g.operands[i] >= 0 && g.operands[i] < n,
            name + ": operand " + std::to_string(g.operands[i]) + " out of range");
    for (std::size_t m = i + 1; m < g.operands.size(); ++m) {
      require(g.operands[i] != g.operands[m], name + ": duplicate operands");
    }
  }
  require(std::isfinite(g.angle_deg), name + ": non-finite angle");
}

void Circuit::validate() const {
  require(num_spins >= 1, "circuit: spin count must be >= 1");
  for (const auto& g : gates) validate_gate(g, num_spins);
}

bool Circuit::is_reversible() const {
  return std::all_of(gates.begin(), gates.end(),
                     [](const Gate& g) { return g.is_reversible(); });
}

void apply_gate_inplace(std::span<double> values, int n, const Gate& g) {
  validate_gate(g, n);
  require(g.is_reversible(), std::string(gate_name(g.kind)) + " is not a permutation gate");
  require(values.size() == (std::size_t{1} << n), "gate application: dimension mismatch");
  const auto& ops = g.operands;
  const std::size_t dim = values.size();
  switch (g.kind) {
    case GateKind::kNot: {
      const std::size_t t = spin_mask(n, ops[0]);
      for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & t)) std::swap(values[i], values[i | t]);
      }
      break;
    }
    case GateKind::kCnot: {
      const std::size_t c = spin_mask(n, ops[0]), t = spin_mask(n, ops[1]);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) std::swap(values[i], values[i | t]);
      }
      break;
    }
    case GateKind::kToffoli: {
      const std::size_t c = spin_mask(n, ops[0]) | spin_mask(n, ops[1]);
      const std::size_t t = spin_mask(n, ops[2]);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) == c && !(i & t)) std::swap(values[i], values[i | t]);
      }
      break;
    }
    case GateKind::kFredkin: {
      const std::size_t c = spin_mask(n, ops[0]);
      const std::size_t q1 = spin_mask(n, ops[1]), q2 = spin_mask(n, ops[2]);
      // Swap |..1..0..> with |..0..1..> when the control is set.
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && (i & q1) && !(i & q2)) std::swap(values[i], values[(i & ~q1) | q2]);
      }
      break;
    }
    default:
      break;
  }
}

BasisPermutation gate_permutation(const Gate& g, int n) {
  validate_gate(g, n);
  require(g.is_reversible(), std::string(gate_name(g.kind)) + " is not a permutation gate");
  // Track where each basis state goes by applying the gate to index labels.
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> where(dim);
  for (std::size_t i = 0; i < dim; ++i) where[i] = static_cast<double>(i);
  apply_gate_inplace(where, n, g);
  // where[k] now holds the source index that landed on k.
  std::vector<std::uint32_t> map(dim);
  for (std::size_t k = 0; k < dim; ++k) map[static_cast<std::size_t>(where[k])] = static_cast<std::uint32_t>(k);
  return BasisPermutation(std::move(map));
}

BasisPermutation circuit_permutation(const Circuit& c) {
  c.validate();
  auto perm = BasisPermutation::identity(c.num_spins);
  for (const auto& g : c.gates) perm = perm.then(gate_permutation(g, c.num_spins));
  return perm;
}

Circuit parse_circuit(std::string_view text, const SpinSystem& sys) {
  Circuit circuit;
  circuit.num_spins = sys.size();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;

    const std::string where = "circuit line " + std::to_string(lineno) + ": ";
    const std::string name = upper(tok[0]);
    auto it = std::find_if(kKinds.begin(), kKinds.end(),
                           [&](const KindInfo& k) { return k.name == name; });
    if (it == kKinds.end()) fail(ErrorCode::kParse, where + "unknown gate '" + tok[0] + "'");
    const std::size_t expected = static_cast<std::size_t>(it->arity) + (it->has_angle ? 1 : 0);
    if (tok.size() - 1 != expected) {
      fail(ErrorCode::kParse, where + name + " takes " + std::to_string(expected) + " arguments");
    }
    Gate g{it->kind, {}, 0.0};
    for (int i = 0; i < it->arity; ++i) {
      try {
        g.operands.push_back(sys.index_of(tok[1 + i]));
      } catch (const Error& e) {
        fail(ErrorCode::kParse, where + e.what());
      }
    }
    if (it->has_angle) {
      const std::string& a = tok.back();
      std::size_t used = 0;
      try {
        g.angle_deg = std::stod(a, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != a.size()) fail(ErrorCode::kParse, where + "bad angle '" + a + "'");
    }
    try {
      validate_gate(g, circuit.num_spins);
    } catch (const Error& e) {
      fail(ErrorCode::kParse, where + e.what());
    }
    circuit.gates.push_back(std::move(g));
  }
  return circuit;
}

Circuit load_circuit(const std::string& path, const SpinSystem& sys) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open circuit file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str(), sys);
}

std::string format_circuit(const Circuit& c, const SpinSystem& sys) {
  std::ostringstream out;
  for (const auto& g : c.gates) {
    out << gate_name(g.kind);
    for (int op : g.operands) out << ' ' << sys.labels.at(op);
    if (info(g.kind).has_angle) out << ' ' << g.angle_deg;
    out << '\n';
  }
  return out.str();
}

}  // namespace coolspin
