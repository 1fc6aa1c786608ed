#include "coolspin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coolspin/error.hpp"

namespace coolspin {

namespace {

ProjectionResult finish(double a_max, double a_initial) {
  ProjectionResult r;
  r.a_max = a_max;
  r.a_initial = a_initial;
  if (a_initial != 0.0) {
    r.enhancement = a_max / a_initial;
  } else {
    r.enhancement = a_max > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return r;
}

double sorted_dot(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double squared_norm(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

}  // namespace

ProjectionResult max_projection(const PopulationState& rho, const PopulationState& target) {
  require(rho.dim() == target.dim(), "max_projection: dimension mismatch");
  const double norm = squared_norm(target.pops());
  require(norm > 0.0, "max_projection: target operator is zero");
  const auto r = rho.pops();
  const auto a = target.pops();
  const double initial = std::inner_product(r.begin(), r.end(), a.begin(), 0.0) / norm;
  const double best = sorted_dot({r.begin(), r.end()}, {a.begin(), a.end()}) / norm;
  return finish(best, initial);
}

ProjectionResult max_projection(const DenseState& rho, const DenseState& target) {
  require(rho.num_spins() == target.num_spins(), "max_projection: dimension mismatch");
  const ComplexMatrix& a = target.matrix();
  const double norm = (a.adjoint() * a).trace().real();
  require(norm > 0.0, "max_projection: target operator is zero");
  const double initial = (a.adjoint() * rho.matrix()).trace().real() / norm;
  const double best = sorted_dot(sorted_eigenvalues(rho.matrix()), sorted_eigenvalues(a)) / norm;
  return finish(best, initial);
}

double brute_force_max_projection(const PopulationState& rho,
                                  const PopulationState& target) {
  require(rho.dim() == target.dim(), "brute_force_max_projection: dimension mismatch");
  if (rho.num_spins() > 3) {
    fail(ErrorCode::kCapacity, "brute_force_max_projection: n must be <= 3");
  }
  const double norm = squared_norm(target.pops());
  require(norm > 0.0, "brute_force_max_projection: target operator is zero");

  std::vector<std::size_t> perm(rho.dim());
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double dot = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) dot += rho[i] * target[perm[i]];
    best = std::max(best, dot);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / norm;
}

double entropy_bound_kmax(double n, double eps0) {
  require(n >= 1.0 && std::isfinite(n), "entropy_bound_kmax: n must be >= 1");
  require(eps0 >= 0.0 && eps0 <= 1.0, "entropy_bound_kmax: eps0 must lie in [0, 1]");
  return binary_capacity(eps0) * n;
}

Decomposition decompose(const DenseState& rho, const DenseState& target) {
  require(rho.num_spins() == target.num_spins(), "decompose: dimension mismatch");
  const ComplexMatrix& a = target.matrix();
  const double norm = (a.adjoint() * a).trace().real();
  require(norm > 0.0, "decompose: target operator is zero");
  Decomposition d;
  d.a = (a.adjoint() * rho.matrix()).trace().real() / norm;
  d.remainder = rho.matrix() - d.a * a;
  d.b_norm = d.remainder.norm();
  return d;
}

Decomposition decompose(const PopulationState& rho, const PopulationState& target) {
  require(rho.dim() == target.dim(), "decompose: dimension mismatch");
  const double norm = squared_norm(target.pops());
  require(norm > 0.0, "decompose: target operator is zero");
  const auto r = rho.pops();
  const auto t = target.pops();
  Decomposition d;
  d.a = std::inner_product(r.begin(), r.end(), t.begin(), 0.0) / norm;
  d.remainder = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) d.remainder(i, i) = r[i] - d.a * t[i];
  d.b_norm = d.remainder.norm();
  return d;
}

}  // namespace coolspin
