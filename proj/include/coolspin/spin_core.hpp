#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace coolspin {

// Absolute tolerances used throughout.
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kEigenTol = 1e-10;

inline constexpr int kDefaultPopulationCapacity = 24;
inline constexpr int kDenseCapacity = 8;

// Largest spin count a PopulationState may hold. Defaults to 24; the
// COOLSPIN_MAX_N environment variable overrides it.
int population_capacity();

// Basis convention: spin 0 is the most significant bit of the basis index and
// bit value 0 is |0> (spin up).
inline std::size_t spin_mask(int n, int j) {
  return std::size_t{1} << static_cast<unsigned>(n - 1 - j);
}
inline int spin_bit(std::size_t index, int n, int j) {
  return (index & spin_mask(n, j)) ? 1 : 0;
}

using ComplexMatrix = Eigen::MatrixXcd;
using complex = std::complex<double>;

struct SpinSystem {
  std::vector<std::string> labels;
  // Symmetric, zero diagonal, Hz.
  std::vector<std::vector<double>> j_hz;
  // Metadata only; the simulator works in the multiply-rotating frame.
  std::vector<double> shift_ppm;
  double epsilon0 = 0.0;

  int size() const { return static_cast<int>(labels.size()); }
  double coupling(int a, int b) const;
  // Accepts a label or a decimal index.
  int index_of(std::string_view label) const;

  // Throws Error(kInvalidArgument) naming the offending field.
  void validate() const;
};

// n spins labelled a, b, c, ... with no couplings.
SpinSystem make_uncoupled_system(int n, double epsilon0);
// C2F3Br: J_ab = -122.1 Hz, J_ac = 75.0 Hz, J_bc = 53.8 Hz.
SpinSystem c2f3br_molecule(double epsilon0 = 3e-5);

// Diagonal of a traceless deviation density matrix in units where thermal
// equilibrium is sum_j Iz^j. Also used to represent diagonal target
// operators such as Iz^a or Iz^a Iz^c.
class PopulationState {
 public:
  PopulationState(int n, std::vector<double> pops);

  int num_spins() const { return n_; }
  std::size_t dim() const { return pops_.size(); }
  std::span<const double> pops() const { return pops_; }
  double operator[](std::size_t i) const { return pops_[i]; }
  double trace() const;

 private:
  int n_;
  std::vector<double> pops_;
};

// True occupation probabilities over the 2^n basis (sums to one).
class ProbabilityState {
 public:
  ProbabilityState(int n, std::vector<double> probs);

  int num_spins() const { return n_; }
  std::size_t dim() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  std::span<double> mutable_probs() { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  int n_;
  std::vector<double> probs_;
};

// Product state with each spin independently polarized: P(bit=0) = (1+eps)/2.
ProbabilityState product_state(std::span<const double> eps);
ProbabilityState product_state(int n, double eps);
// Linearized high-temperature picture: p = (1 + 2 eps0 rho) / 2^n.
ProbabilityState from_deviation(const PopulationState& rho, double eps0);
// 2 Tr(rho_tilde Iz^j) = P(bit j = 0) - P(bit j = 1).
double marginal_polarization(const ProbabilityState& p, int j);
// -sum p log2 p.
double shannon_entropy(const ProbabilityState& p);

// Bijection on {0 .. 2^n - 1}.
class BasisPermutation {
 public:
  explicit BasisPermutation(std::vector<std::uint32_t> map);
  static BasisPermutation identity(int n);

  int num_spins() const { return n_; }
  std::size_t dim() const { return map_.size(); }
  std::uint32_t operator()(std::size_t i) const { return map_[i]; }
  std::span<const std::uint32_t> map() const { return map_; }

  // Applies *this first, then next.
  BasisPermutation then(const BasisPermutation& next) const;
  BasisPermutation inverse() const;
  bool operator==(const BasisPermutation&) const = default;

 private:
  int n_;
  std::vector<std::uint32_t> map_;
};

class DenseState {
 public:
  DenseState(int n, ComplexMatrix mat);
  static DenseState from_populations(const PopulationState& s);

  int num_spins() const { return n_; }
  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::VectorXd diagonal() const { return mat_.diagonal().real(); }
  // Largest |off-diagonal| element.
  double max_coherence() const;

 private:
  int n_;
  ComplexMatrix mat_;
};

class Unitary {
 public:
  Unitary(int n, ComplexMatrix mat);
  static Unitary identity(int n);
  // U|i> = |perm(i)>.
  static Unitary from_permutation(const BasisPermutation& perm);

  int num_spins() const { return n_; }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  int n_;
  ComplexMatrix mat_;
};

// Thermal deviation diagonal sum_j Iz^j.
PopulationState thermal_state(int n);
inline PopulationState thermal_state(const SpinSystem& sys) {
  return thermal_state(sys.size());
}

// Product operator prod_{j in spins} Iz^j as a diagonal.
PopulationState iz_product(int n, std::span<const int> spins);
inline PopulationState iz_operator(int n, int j) {
  const int s[] = {j};
  return iz_product(n, s);
}

// Polarization of spin j in units of eps0. With rho ~ 1/2^n + eps0/2^(n-1)
// times the deviation, this is the population difference over 2^(n-1); the
// thermal deviation gives 1 on every spin.
double polarization(const PopulationState& s, int j);
double polarization(const DenseState& s, int j);

// Binary entropy in bits; H(0) = 1, H(1) = 0.
double entropy_binary(double eps);
// 1 - H(eps), evaluated without cancellation for small eps.
double binary_capacity(double eps);

// hbar * 2 pi * larmor / (2 k_B T).
double thermal_polarization(double larmor_hz, double temperature_k);

PopulationState apply_permutation(const PopulationState& s,
                                  const BasisPermutation& perm);
ProbabilityState apply_permutation(const ProbabilityState& s,
                                   const BasisPermutation& perm);
DenseState apply_unitary(const DenseState& s, const Unitary& u);

// Eigenvalues of a Hermitian matrix, sorted descending.
std::vector<double> sorted_eigenvalues(const ComplexMatrix& m);

}  // namespace coolspin
