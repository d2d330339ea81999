#include <cmath>

#include "doctest.h"
#include "gibbsmps/oracles.hpp"
#include "gibbsmps/qmc.hpp"

using namespace gibbsmps;

namespace {

// dense classical-Ising thermal averages by enumeration (test oracle)
struct ClassicalDense {
  double energy;  // <E> of H = -J sum_<ij> s_i s_j
  double m2;      // <(sum_i s_i / N)^2>
};

ClassicalDense classical_ising_dense(std::size_t rows, std::size_t cols, double j_coupling,
                                     double beta) {
  const auto lattice = Lattice::grid(rows, cols);
  const auto bonds = lattice.bonds();
  const std::size_t n = lattice.n_sites();
  double z = 0.0, e_acc = 0.0, m2_acc = 0.0;
  for (std::size_t conf = 0; conf < (std::size_t{1} << n); ++conf) {
    auto spin = [&](std::size_t i) { return (conf >> i) & 1 ? -1.0 : 1.0; };
    double e = 0.0, m = 0.0;
    for (const auto& [i, jj] : bonds) e -= j_coupling * spin(i) * spin(jj);
    for (std::size_t i = 0; i < n; ++i) m += spin(i);
    const double w = std::exp(-beta * e);
    z += w;
    e_acc += w * e;
    m2_acc += w * (m / n) * (m / n);
  }
  return {e_acc / z, m2_acc / z};
}

}  // namespace

TEST_CASE("binned_estimate basics") {
  std::vector<double> constant(64, 3.25);
  const auto c = binned_estimate(constant, 8);
  CHECK(c.value == doctest::Approx(3.25));
  CHECK(c.stderr_ == doctest::Approx(0.0));
  CHECK_THROWS_AS(binned_estimate(std::vector<double>(3, 1.0), 8), std::invalid_argument);
}

TEST_CASE("wolff on the classical 2D Ising model reproduces dense enumeration") {
  // detailed-balance smoke test at an intermediate coupling
  const double k = 0.4;
  const auto est = wolff_classical_ising_m2(3, 3, k, 500, 20000, 32, 91);
  const auto oracle = classical_ising_dense(3, 3, 1.0, k);  // K = beta*J with J=1, beta=k
  CHECK(std::abs(est.value - oracle.m2) < 3.0 * est.stderr_);
  CHECK(est.stderr_ < 0.02);
}

TEST_CASE("qmc config validation") {
  QmcConfig cfg;
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 1.0;
  cfg.field = 0.0;
  CHECK_THROWS_AS(qmc_tfim2d(cfg), std::invalid_argument);
  cfg.field = 0.5;
  cfg.n_slices = 4;  // below the minimum slice count
  CHECK_THROWS_AS(qmc_tfim2d(cfg), std::invalid_argument);
  cfg.n_slices = 8;
  cfg.beta = 2.0;  // beta/M = 0.25 > 0.1
  CHECK_THROWS_AS(qmc_tfim2d(cfg), std::invalid_argument);
}

TEST_CASE("qmc at h -> 0 matches the dense classical Ising average") {
  QmcConfig cfg;
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 1.0;
  cfg.coupling = 1.0;
  cfg.field = 1e-6;
  cfg.n_thermalization = 1000;
  cfg.n_measure_sweeps = 8000;
  cfg.seed = 7;
  const auto res = qmc_tfim2d(cfg);
  const auto oracle = classical_ising_dense(2, 2, 1.0, 1.0);
  const double eps_oracle = oracle.energy / 4.0;
  CHECK(std::abs(res.energy_density.value - eps_oracle) <
        3.0 * std::max(res.energy_density.stderr_, 1e-4));
}

TEST_CASE("qmc at tiny beta gives zero energy density") {
  QmcConfig cfg;
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 1e-3;
  cfg.field = 0.5;
  cfg.n_thermalization = 500;
  cfg.n_measure_sweeps = 6000;
  cfg.seed = 21;
  const auto res = qmc_tfim2d(cfg);
  CHECK(std::abs(res.energy_density.value) < 3.0 * std::max(res.energy_density.stderr_, 1e-3));
}

TEST_CASE("qmc energy and susceptibility track dense ED on a 3x3 lattice") {
  auto spec = tfim(Lattice::grid(3, 3), 1.0, 0.5);
  for (double beta : {1.0, 3.0}) {
    QmcConfig cfg;
    cfg.rows = 3;
    cfg.cols = 3;
    cfg.beta = beta;
    cfg.field = 0.5;
    cfg.n_thermalization = 2000;
    cfg.n_measure_sweeps = 12000;
    cfg.seed = 1234;
    const auto res = qmc_tfim2d(cfg);

    const double eps_exact = dense_thermal_energy(spec, beta) / 9.0;
    CHECK(std::abs(res.energy_density.value - eps_exact) < 3.0 * res.energy_density.stderr_);

    const double chi_exact = exact_susceptibility(spec, beta);
    CHECK(std::abs(res.susceptibility.value - chi_exact) < 3.0 * res.susceptibility.stderr_);
  }
}

TEST_CASE("qmc correlations against the dense oracle") {
  auto spec = tfim(Lattice::grid(2, 2), 1.0, 0.5);
  QmcConfig cfg;
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 2.0;
  cfg.field = 0.5;
  cfg.n_thermalization = 1500;
  cfg.n_measure_sweeps = 10000;
  cfg.seed = 5;
  const auto res = qmc_tfim2d(cfg);
  const auto corr_exact = exact_correlations(spec, 2.0);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(std::abs(res.correlations[i].value - corr_exact(0, i)) <
          3.0 * std::max(res.correlations[i].stderr_, 1e-3));
  }
}

TEST_CASE("qmc stderr shrinks like one over root sweeps") {
  QmcConfig cfg;
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 1.0;
  cfg.field = 0.5;
  cfg.n_thermalization = 1000;
  cfg.seed = 77;
  cfg.n_measure_sweeps = 4000;
  const auto small = qmc_tfim2d(cfg);
  cfg.n_measure_sweeps = 16000;
  const auto big = qmc_tfim2d(cfg);
  const double ratio = small.energy_density.stderr_ / big.energy_density.stderr_;
  CHECK(ratio > 1.4);  // 2.0 +- 30%
  CHECK(ratio < 2.6);
}

TEST_CASE("qmc runs are deterministic for a fixed seed") {
  QmcConfig cfg;
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 1.0;
  cfg.field = 0.5;
  cfg.n_thermalization = 200;
  cfg.n_measure_sweeps = 2000;
  cfg.seed = 31;
  const auto a = qmc_tfim2d(cfg);
  const auto b = qmc_tfim2d(cfg);
  CHECK(a.energy_density.value == b.energy_density.value);
  CHECK(a.susceptibility.value == b.susceptibility.value);
}
