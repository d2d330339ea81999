#include "gibbsmps/oracles.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace gibbsmps {

namespace {

constexpr std::size_t kDenseSiteCap = 12;
constexpr std::size_t kBdgSiteCap = 24;

struct DenseThermal {
  Eigen::VectorXd energies;
  Matrix vectors;
  Eigen::VectorXd weights;  // normalized Boltzmann weights
};

DenseThermal dense_thermal(const HamiltonianSpec& spec, double beta) {
  const std::size_t n = spec.lattice.n_sites();
  if (n > kDenseSiteCap)
    throw capacity_error("dense oracle limited to 12 sites, got " + std::to_string(n));
  const Matrix h = dense_pauli_sum(spec.terms, n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  DenseThermal out;
  out.energies = es.eigenvalues();
  out.vectors = es.eigenvectors();
  const double e0 = out.energies.minCoeff();
  out.weights = (-(beta) * (out.energies.array() - e0)).exp();
  out.weights /= out.weights.sum();
  return out;
}

}  // namespace

Matrix dense_gibbs(const HamiltonianSpec& spec, double beta) {
  const auto th = dense_thermal(spec, beta);
  return th.vectors * th.weights.asDiagonal() * th.vectors.adjoint();
}

double dense_free_energy(const HamiltonianSpec& spec, double beta) {
  require(beta > 0.0, "dense_free_energy: beta must be positive");
  const auto th = dense_thermal(spec, beta);
  const double e0 = th.energies.minCoeff();
  const double z_shifted = (-(beta) * (th.energies.array() - e0)).exp().sum();
  return e0 - std::log(z_shifted) / beta;
}

double dense_thermal_energy(const HamiltonianSpec& spec, double beta) {
  const auto th = dense_thermal(spec, beta);
  return th.energies.dot(th.weights);
}

std::vector<double> bdg_spectrum(std::size_t n, double coupling, double field) {
  require(n >= 1, "bdg_spectrum: need at least one site");
  if (n > kBdgSiteCap)
    throw capacity_error("bdg oracle limited to 24 sites, got " + std::to_string(n));

  static std::map<std::tuple<std::size_t, double, double>, std::vector<double>> cache;
  static std::mutex cache_mutex;
  const auto key = std::make_tuple(n, coupling, field);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  // Jordan-Wigner quadratic form H = sum c^dag A c + (c^dag B c^dag + h.c.)/2
  // with A_ii = 2h, A_{i,i+1} = -J, B_{i,i+1} = -B_{i+1,i} = -J. The
  // single-particle energies are the singular values of A - B.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 2.0 * field;
  for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = -2.0 * coupling;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::vector<double> eps(svd.singularValues().data(), svd.singularValues().data() + n);
  std::sort(eps.begin(), eps.end());

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[key] = eps;
  return eps;
}

double bdg_thermal_energy(std::size_t n, double coupling, double field, double beta) {
  const auto eps = bdg_spectrum(n, coupling, field);
  double half_sum = 0.0;
  for (double e : eps) half_sum += 0.5 * e;

  // Boltzmann average over all 2^N occupation configurations,
  // E(occ) = sum_k eps_k occ_k - sum_k eps_k / 2; the vacuum is the minimum.
  const std::size_t configs = std::size_t{1} << n;
  double z = 0.0, ez = 0.0;
  for (std::size_t occ = 0; occ < configs; ++occ) {
    double e_shift = 0.0;  // E - E_vacuum >= 0
    for (std::size_t k = 0; k < n; ++k)
      if (occ & (std::size_t{1} << k)) e_shift += eps[k];
    const double w = std::exp(-beta * e_shift);
    z += w;
    ez += (e_shift - half_sum) * w;
  }
  return ez / z / static_cast<double>(n);
}

double exact_susceptibility(const HamiltonianSpec& spec, double beta) {
  const std::size_t n = spec.lattice.n_sites();
  const Matrix rho = dense_gibbs(spec, beta);
  const std::size_t dim = std::size_t{1} << n;
  // M_tot is diagonal in the computational basis
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t s = 0; s < dim; ++s) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      m += ((s >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
    const double p = rho(s, s).real();
    m1 += p * m;
    m2 += p * m * m;
  }
  return beta / static_cast<double>(n * n) * (m2 - m1 * m1);
}

double exact_specific_heat(const HamiltonianSpec& spec, double beta) {
  const auto th = dense_thermal(spec, beta);
  const double e1 = th.energies.dot(th.weights);
  const double e2 = th.energies.cwiseProduct(th.energies).dot(th.weights);
  const std::size_t n = spec.lattice.n_sites();
  return beta * beta / static_cast<double>(n * n) * (e2 - e1 * e1);
}

double exact_magnetization(const HamiltonianSpec& spec, double beta) {
  const std::size_t n = spec.lattice.n_sites();
  const Matrix rho = dense_gibbs(spec, beta);
  const std::size_t dim = std::size_t{1} << n;
  double m1 = 0.0;
  for (std::size_t s = 0; s < dim; ++s) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      m += ((s >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
    m1 += rho(s, s).real() * m;
  }
  return m1;
}

Eigen::MatrixXd exact_correlations(const HamiltonianSpec& spec, double beta) {
  const std::size_t n = spec.lattice.n_sites();
  const Matrix rho = dense_gibbs(spec, beta);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::VectorXd z1 = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd zz = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t s = 0; s < dim; ++s) {
    const double p = rho(s, s).real();
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = ((s >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
      z1[i] += p * zi;
      for (std::size_t j = 0; j < n; ++j) {
        const double zj = ((s >> (n - 1 - j)) & 1) ? -1.0 : 1.0;
        zz(i, j) += p * zi * zj;
      }
    }
  }
  return zz - z1 * z1.transpose();
}

}  // namespace gibbsmps
