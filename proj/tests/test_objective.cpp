#include <cmath>
#include <random>

#include "doctest.h"
#include "gibbsmps/ansatz.hpp"
#include "gibbsmps/objective.hpp"
#include "gibbsmps/oracles.hpp"
#include "support/dense_sim.hpp"

using namespace gibbsmps;

namespace {

AnsatzConfig hea_cfg(std::size_t np, std::size_t na, std::size_t layers) {
  AnsatzConfig cfg;
  cfg.family = AnsatzFamily::HEA;
  cfg.n_physical = np;
  cfg.n_ancilla = na;
  cfg.layers = layers;
  return cfg;
}

}  // namespace

TEST_CASE("free energy of the zero-angle HEA state") {
  auto spec = tfim(Lattice::chain(4), 1.0, 0.5);
  const Circuit c = build_hea(hea_cfg(4, 2, 1));
  for (double beta : {0.3, 1.0, 5.0}) {
    const auto ctx = make_objective_context(c, spec, beta, 128, 1e-12);
    const auto r = free_energy(std::vector<double>(c.n_params, 0.0), ctx);
    CHECK(r.s == doctest::Approx(0.0));
    CHECK(r.e == doctest::Approx(-3.0));
    CHECK(r.f == doctest::Approx(-3.0));
  }
}

TEST_CASE("free energy of the zero-angle TFDA state") {
  auto spec = tfim(Lattice::chain(4), 1.0, 0.5);
  AnsatzConfig cfg;
  cfg.family = AnsatzFamily::TFDA;
  cfg.n_physical = 4;
  cfg.n_ancilla = 4;
  cfg.layers = 1;
  cfg.model = spec;
  const Circuit c = build_tfda(cfg);
  const auto ctx = make_objective_context(c, spec, 1e-5, 128, 1e-12);
  const auto r = free_energy(std::vector<double>(c.n_params, 0.0), ctx);
  CHECK(r.s == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-10));
  CHECK(std::abs(r.e) < 6.0);  // bounded by ||H|| = 3J + 4h
  CHECK(r.f == doctest::Approx(r.e - r.s * 1e5));
}

TEST_CASE("free energy matches the dense purification oracle on random angles") {
  auto spec = tfim(Lattice::chain(4), 1.0, 0.5);
  const Circuit c = build_hea(hea_cfg(4, 4, 2));
  const double beta = 2.3;
  const auto ctx = make_objective_context(c, spec, beta, 128, 1e-12);

  const Matrix h_phys = dense_pauli_sum(spec.terms, 4);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> theta(c.n_params);
    for (auto& t : theta) t = angle(rng);

    const auto r = free_energy(theta, ctx);

    const Vector psi = densesim::run_circuit(bind_parameters(route_to_chain(c), theta), 8);
    const Matrix rho = densesim::partial_trace_suffix(psi, 4);
    const double e_dense = (rho * h_phys).trace().real();
    const double s_dense = densesim::vn_entropy(rho);
    CHECK(std::abs(r.e - e_dense) < 1e-8);
    CHECK(std::abs(r.s - s_dense) < 1e-8);
    CHECK(std::abs(r.f - (e_dense - s_dense / beta)) < 1e-8);
  }
}

TEST_CASE("free energy rejects mismatched parameter vectors") {
  auto spec = tfim(Lattice::chain(3), 1.0, 0.5);
  const Circuit c = build_hea(hea_cfg(3, 1, 1));
  const auto ctx = make_objective_context(c, spec, 1.0, 64, 1e-12);
  CHECK_THROWS_AS(free_energy(std::vector<double>(c.n_params + 2, 0.0), ctx),
                  std::invalid_argument);
}

TEST_CASE("beta requests below the floor are clamped and flagged") {
  auto spec = tfim(Lattice::chain(2), 1.0, 0.5);
  const Circuit c = build_hea(hea_cfg(2, 1, 1));
  const auto ctx = make_objective_context(c, spec, 0.0, 64, 1e-12);
  CHECK(ctx.beta == kBetaFloor);
  CHECK(ctx.beta_clamped);

  PrepareOptions opt;
  opt.restarts = 1;
  opt.max_iter = 60;
  opt.seed = 5;
  const auto rec = multistart_prepare(c, spec, 0.0, 64, 1e-12, opt);
  CHECK(rec.beta == kBetaFloor);
  CHECK(rec.beta_clamped);
  CHECK(rec.beta_requested == 0.0);
}

TEST_CASE("multistart bookkeeping and monotonicity") {
  auto spec = tfim(Lattice::chain(2), 1.0, 0.5);
  const Circuit c = build_hea(hea_cfg(2, 1, 1));

  PrepareOptions opt;
  opt.restarts = 1;
  opt.max_iter = 200;
  opt.seed = 11;
  const auto rec1 = multistart_prepare(c, spec, 1.5, 64, 1e-12, opt);
  CHECK(rec1.restarts_run == 1);
  CHECK(rec1.best_restart == 0);
  CHECK(rec1.free_energy_value ==
        doctest::Approx(rec1.energy - rec1.entropy / rec1.beta).epsilon(1e-10));
  CHECK(rec1.entropy >= 0.0);
  CHECK(rec1.entropy <= 2.0 * std::log(2.0) + 1e-9);

  opt.restarts = 4;
  const auto rec4 = multistart_prepare(c, spec, 1.5, 64, 1e-12, opt);
  CHECK(rec4.free_energy_value <= rec1.free_energy_value + 1e-12);
  CHECK(rec4.restart_outcomes.size() == 4);
  // the same per-restart seed makes restart 0 reproduce the single run
  CHECK(rec4.restart_outcomes[0].f == doctest::Approx(rec1.free_energy_value).epsilon(1e-12));
  for (const auto& o : rec4.restart_outcomes)
    CHECK(rec4.free_energy_value <= o.f + 1e-12);
}

TEST_CASE("prepared records respect the Gibbs variational bound") {
  auto spec = tfim(Lattice::chain(3), 1.0, 0.5);
  const Circuit c = build_hea(hea_cfg(3, 2, 2));
  PrepareOptions opt;
  opt.restarts = 3;
  opt.max_iter = 800;
  opt.seed = 21;
  for (double beta : {0.7, 3.0}) {
    const auto rec = multistart_prepare(c, spec, beta, 64, 1e-12, opt);
    CHECK(rec.free_energy_value >= dense_free_energy(spec, beta) - 1e-8);
  }
}

TEST_CASE("infidelity closed forms") {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  CHECK(infidelity(rho, rho) == doctest::Approx(0.0));

  Matrix sigma = Matrix::Zero(2, 2);
  sigma(1, 1) = 1.0;
  CHECK(infidelity(rho, sigma) == doctest::Approx(1.0));

  const Matrix mixed = Matrix::Identity(2, 2) / 2.0;
  CHECK(infidelity(mixed, rho) == doctest::Approx(0.5).epsilon(1e-12));

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 2.0;
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(infidelity(bad, rho), std::invalid_argument);
}

TEST_CASE("nelder-mead fallback is usable through multistart") {
  auto spec = tfim(Lattice::chain(2), 1.0, 0.5);
  const Circuit c = build_hea(hea_cfg(2, 1, 1));
  PrepareOptions opt;
  opt.restarts = 2;
  opt.max_iter = 300;
  opt.seed = 3;
  opt.use_nelder_mead = true;
  const auto rec = multistart_prepare(c, spec, 2.0, 64, 1e-12, opt);
  CHECK(rec.free_energy_value >= dense_free_energy(spec, 2.0) - 1e-8);
}
