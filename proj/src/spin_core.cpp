#include "coolspin/spin_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>

#include "coolspin/error.hpp"

namespace coolspin {

namespace {

constexpr double kPlanck = 6.62607015e-34;       // J s, exact (SI 2019)
constexpr double kBoltzmann = 1.380649e-23;      // J/K, exact (SI 2019)

void check_spin_count(int n, int capacity, const char* what) {
  require(n >= 1, std::string(what) + ": spin count must be >= 1");
  if (n > capacity) {
    fail(ErrorCode::kCapacity, std::string(what) + ": " + std::to_string(n) +
                                   " spins exceeds capacity of " +
                                   std::to_string(capacity));
  }
}

int log2_exact(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  require((std::size_t{1} << n) == dim && n >= 1,
          "dimension " + std::to_string(dim) + " is not a power of two");
  return n;
}

void check_index(int n, int j) {
  require(j >= 0 && j < n, "spin index " + std::to_string(j) +
                               " out of range for " + std::to_string(n) +
                               " spins");
}

}  // namespace

int population_capacity() {
  if (const char* env = std::getenv("COOLSPIN_MAX_N")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 30) {
      return static_cast<int>(v);
    }
  }
  return kDefaultPopulationCapacity;
}

// ---------------------------------------------------------------------------
// SpinSystem

double SpinSystem::coupling(int a, int b) const {
  check_index(size(), a);
  check_index(size(), b);
  return j_hz[a][b];
}

int SpinSystem::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels[i] == label) return i;
  }
  if (!label.empty() && std::all_of(label.begin(), label.end(), [](char c) {
        return c >= '0' && c <= '9';
      })) {
    int idx = std::stoi(std::string(label));
    if (idx < size()) return idx;
  }
  fail(ErrorCode::kInvalidArgument,
       "unknown spin label '" + std::string(label) + "'");
}

void SpinSystem::validate() const {
  const int n = size();
  require(n >= 1, "labels: at least one spin required");
  for (int i = 0; i < n; ++i) {
    require(!labels[i].empty(), "labels: empty label");
    for (int k = i + 1; k < n; ++k) {
      require(labels[i] != labels[k], "labels: duplicate label '" + labels[i] + "'");
    }
  }
  require(static_cast<int>(j_hz.size()) == n,
          "j_hz: expected " + std::to_string(n) + " rows");
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(j_hz[i].size()) == n,
            "j_hz: row " + std::to_string(i) + " has wrong length");
    require(j_hz[i][i] == 0.0, "j_hz: diagonal must be zero");
    for (int k = 0; k < n; ++k) {
      require(std::isfinite(j_hz[i][k]), "j_hz: non-finite entry");
      require(j_hz[i][k] == j_hz[k][i], "j_hz: matrix must be symmetric");
    }
  }
  require(shift_ppm.empty() || static_cast<int>(shift_ppm.size()) == n,
          "shift_ppm: expected " + std::to_string(n) + " entries");
  require(epsilon0 >= 0.0 && epsilon0 <= 1.0, "epsilon0: must lie in [0, 1]");
}

SpinSystem make_uncoupled_system(int n, double epsilon0) {
  require(n >= 1, "spin count must be >= 1");
  SpinSystem sys;
  for (int i = 0; i < n; ++i) {
    sys.labels.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                                : "s" + std::to_string(i));
  }
  sys.j_hz.assign(n, std::vector<double>(n, 0.0));
  sys.shift_ppm.assign(n, 0.0);
  sys.epsilon0 = epsilon0;
  sys.validate();
  return sys;
}

SpinSystem c2f3br_molecule(double epsilon0) {
  SpinSystem sys;
  sys.labels = {"a", "b", "c"};
  sys.j_hz = {{0.0, -122.1, 75.0}, {-122.1, 0.0, 53.8}, {75.0, 53.8, 0.0}};
  sys.shift_ppm = {0.0, 28.2, 48.1};
  sys.epsilon0 = epsilon0;
  sys.validate();
  return sys;
}

// ---------------------------------------------------------------------------
// PopulationState / ProbabilityState

PopulationState::PopulationState(int n, std::vector<double> pops)
    : n_(n), pops_(std::move(pops)) {
  check_spin_count(n, population_capacity(), "population state");
  require(pops_.size() == (std::size_t{1} << n),
          "population state: expected 2^n entries");
  double sum = 0.0, scale = 1.0;
  for (double p : pops_) {
    require(std::isfinite(p), "population state: non-finite entry");
    sum += p;
    scale += std::abs(p);
  }
  require(std::abs(sum) <= kTraceTol * scale,
          "population state: deviation matrix must be traceless");
}

double PopulationState::trace() const {
  return std::accumulate(pops_.begin(), pops_.end(), 0.0);
}

ProbabilityState::ProbabilityState(int n, std::vector<double> probs)
    : n_(n), probs_(std::move(probs)) {
  check_spin_count(n, population_capacity(), "probability state");
  require(probs_.size() == (std::size_t{1} << n),
          "probability state: expected 2^n entries");
  double sum = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= -1e-15, "probability state: negative entry");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "probability state: must sum to one");
}

ProbabilityState product_state(std::span<const double> eps) {
  const int n = static_cast<int>(eps.size());
  check_spin_count(n, population_capacity(), "probability state");
  for (double e : eps) require(e >= -1.0 && e <= 1.0, "polarization must lie in [-1, 1]");
  std::vector<double> probs(std::size_t{1} << n, 1.0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    for (int j = 0; j < n; ++j) {
      probs[i] *= spin_bit(i, n, j) ? (1.0 - eps[j]) / 2.0 : (1.0 + eps[j]) / 2.0;
    }
  }
  return ProbabilityState(n, std::move(probs));
}

ProbabilityState product_state(int n, double eps) {
  std::vector<double> e(static_cast<std::size_t>(std::max(n, 0)), eps);
  return product_state(e);
}

ProbabilityState from_deviation(const PopulationState& rho, double eps0) {
  require(eps0 >= 0.0 && eps0 <= 1.0, "eps0 must lie in [0, 1]");
  const double norm = 1.0 / static_cast<double>(rho.dim());
  std::vector<double> probs(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    probs[i] = norm * (1.0 + 2.0 * eps0 * rho[i]);
  }
  return ProbabilityState(rho.num_spins(), std::move(probs));
}

double marginal_polarization(const ProbabilityState& p, int j) {
  check_index(p.num_spins(), j);
  double up = 0.0, down = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    (spin_bit(i, p.num_spins(), j) ? down : up) += p[i];
  }
  return up - down;
}

double shannon_entropy(const ProbabilityState& p) {
  double h = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

// ---------------------------------------------------------------------------
// BasisPermutation

BasisPermutation::BasisPermutation(std::vector<std::uint32_t> map)
    : n_(log2_exact(map.size())), map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (auto v : map_) {
    require(v < map_.size() && !seen[v], "basis permutation is not a bijection");
    seen[v] = true;
  }
}

BasisPermutation BasisPermutation::identity(int n) {
  check_spin_count(n, population_capacity(), "permutation");
  std::vector<std::uint32_t> map(std::size_t{1} << n);
  std::iota(map.begin(), map.end(), 0u);
  return BasisPermutation(std::move(map));
}

BasisPermutation BasisPermutation::then(const BasisPermutation& next) const {
  require(next.dim() == dim(), "permutation dimension mismatch");
  std::vector<std::uint32_t> map(dim());
  for (std::size_t i = 0; i < dim(); ++i) map[i] = next.map_[map_[i]];
  return BasisPermutation(std::move(map));
}

BasisPermutation BasisPermutation::inverse() const {
  std::vector<std::uint32_t> map(dim());
  for (std::size_t i = 0; i < dim(); ++i) map[map_[i]] = static_cast<std::uint32_t>(i);
  return BasisPermutation(std::move(map));
}

// ---------------------------------------------------------------------------
// DenseState / Unitary

DenseState::DenseState(int n, ComplexMatrix mat) : n_(n), mat_(std::move(mat)) {
  check_spin_count(n, kDenseCapacity, "dense state");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  require(mat_.rows() == dim && mat_.cols() == dim,
          "dense state: expected 2^n x 2^n matrix");
  require((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= kTraceTol *
              std::max(1.0, mat_.cwiseAbs().maxCoeff()),
          "dense state: matrix is not Hermitian");
  require(std::abs(mat_.trace()) <= kTraceTol * std::max(1.0, mat_.cwiseAbs().sum()),
          "dense state: deviation matrix must be traceless");
}

DenseState DenseState::from_populations(const PopulationState& s) {
  check_spin_count(s.num_spins(), kDenseCapacity, "dense state");
  ComplexMatrix m = ComplexMatrix::Zero(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) m(i, i) = s[i];
  return DenseState(s.num_spins(), std::move(m));
}

double DenseState::max_coherence() const {
  ComplexMatrix off = mat_;
  off.diagonal().setZero();
  return off.size() ? off.cwiseAbs().maxCoeff() : 0.0;
}

Unitary::Unitary(int n, ComplexMatrix mat) : n_(n), mat_(std::move(mat)) {
  check_spin_count(n, kDenseCapacity, "unitary");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  require(mat_.rows() == dim && mat_.cols() == dim,
          "unitary: expected 2^n x 2^n matrix");
  const double dev =
      (mat_ * mat_.adjoint() - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  require(dev <= kUnitaryTol, "unitary: U U^dagger deviates from identity");
}

Unitary Unitary::identity(int n) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  return Unitary(n, ComplexMatrix::Identity(dim, dim));
}

Unitary Unitary::from_permutation(const BasisPermutation& perm) {
  const auto dim = static_cast<Eigen::Index>(perm.dim());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m(perm(static_cast<std::size_t>(i)), i) = 1.0;
  return Unitary(perm.num_spins(), std::move(m));
}

// ---------------------------------------------------------------------------
// Operations

PopulationState thermal_state(int n) {
  check_spin_count(n, population_capacity(), "thermal state");
  std::vector<double> pops(std::size_t{1} << n);
  for (std::size_t i = 0; i < pops.size(); ++i) {
    const int ones = std::popcount(i);
    pops[i] = 0.5 * static_cast<double>(n - 2 * ones);
  }
  return PopulationState(n, std::move(pops));
}

PopulationState iz_product(int n, std::span<const int> spins) {
  check_spin_count(n, population_capacity(), "product operator");
  require(!spins.empty(), "product operator needs at least one spin");
  for (int j : spins) check_index(n, j);
  std::vector<double> pops(std::size_t{1} << n, 1.0);
  for (std::size_t i = 0; i < pops.size(); ++i) {
    for (int j : spins) pops[i] *= spin_bit(i, n, j) ? -0.5 : 0.5;
  }
  return PopulationState(n, std::move(pops));
}

double polarization(const PopulationState& s, int j) {
  check_index(s.num_spins(), j);
  double up = 0.0, down = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    (spin_bit(i, s.num_spins(), j) ? down : up) += s[i];
  }
  return (up - down) / std::ldexp(1.0, s.num_spins() - 1);
}

double polarization(const DenseState& s, int j) {
  check_index(s.num_spins(), j);
  const auto& m = s.matrix();
  double up = 0.0, down = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    (spin_bit(static_cast<std::size_t>(i), s.num_spins(), j) ? down : up) += m(i, i).real();
  }
  return (up - down) / std::ldexp(1.0, s.num_spins() - 1);
}

double entropy_binary(double eps) {
  require(eps >= 0.0 && eps <= 1.0, "entropy_binary: eps must lie in [0, 1]");
  const double p = (1.0 + eps) / 2.0;
  const double q = (1.0 - eps) / 2.0;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

double binary_capacity(double eps) {
  require(eps >= 0.0 && eps <= 1.0, "binary_capacity: eps must lie in [0, 1]");
  if (eps == 1.0) return 1.0;
  // 1 - H = [(1+e) ln(1+e) + (1-e) ln(1-e)] / (2 ln 2)
  const double v = (1.0 + eps) * std::log1p(eps) + (1.0 - eps) * std::log1p(-eps);
  return v / (2.0 * std::numbers::ln2);
}

double thermal_polarization(double larmor_hz, double temperature_k) {
  require(larmor_hz >= 0.0 && std::isfinite(larmor_hz),
          "thermal_polarization: larmor frequency must be >= 0");
  require(temperature_k > 0.0 && std::isfinite(temperature_k),
          "thermal_polarization: temperature must be > 0");
  // hbar * omega = h * f
  return kPlanck * larmor_hz / (2.0 * kBoltzmann * temperature_k);
}

PopulationState apply_permutation(const PopulationState& s,
                                  const BasisPermutation& perm) {
  require(perm.dim() == s.dim(), "apply_permutation: dimension mismatch");
  std::vector<double> out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) out[perm(i)] = s[i];
  return PopulationState(s.num_spins(), std::move(out));
}

ProbabilityState apply_permutation(const ProbabilityState& s,
                                   const BasisPermutation& perm) {
  require(perm.dim() == s.dim(), "apply_permutation: dimension mismatch");
  std::vector<double> out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) out[perm(i)] = s[i];
  return ProbabilityState(s.num_spins(), std::move(out));
}

DenseState apply_unitary(const DenseState& s, const Unitary& u) {
  require(s.num_spins() == u.num_spins(), "apply_unitary: dimension mismatch");
  ComplexMatrix out = u.matrix() * s.matrix() * u.matrix().adjoint();
  // Symmetrize away rounding so the Hermitian invariant holds exactly.
  ComplexMatrix herm = 0.5 * (out + out.adjoint());
  return DenseState(s.num_spins(), std::move(herm));
}

std::vector<double> sorted_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, "eigensolver failed to converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace coolspin
