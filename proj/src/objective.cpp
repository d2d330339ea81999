#include "gibbsmps/objective.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "gibbsmps/mps.hpp"
#include "gibbsmps/rng.hpp"

namespace gibbsmps {

ObjectiveContext make_objective_context(const Circuit& circuit, const HamiltonianSpec& spec,
                                        double beta, std::size_t chi_max, double svd_cutoff) {
  require(spec.lattice.n_sites() == circuit.n_physical,
          "make_objective_context: model size must match the physical register");
  require(circuit.n_ancilla >= 1, "make_objective_context: need at least one ancilla");
  require(beta >= 0.0, "make_objective_context: beta must be nonnegative");

  ObjectiveContext ctx;
  ctx.routed = route_to_chain(circuit);
  ctx.beta_clamped = beta < kBetaFloor;
  ctx.beta = ctx.beta_clamped ? kBetaFloor : beta;
  ctx.chi_max = chi_max;
  ctx.svd_cutoff = svd_cutoff;
  ctx.ancilla_cut = circuit.n_physical;

  const auto layout = spec.lattice.kind == LatticeKind::Grid
                          ? snake_map(spec.lattice.rows, spec.lattice.cols)
                          : identity_layout(spec.lattice.n_sites());
  ctx.hamiltonian = to_mpo(spec, layout, circuit.n_qubits());
  return ctx;
}

FreeEnergyResult free_energy(const std::vector<double>& theta, const ObjectiveContext& ctx) {
  const auto gates = bind_parameters(ctx.routed, theta);
  auto psi = MpsState::from_product_state(std::string(ctx.routed.n_qubits(), '0'), ctx.chi_max,
                                          ctx.svd_cutoff);
  for (const auto& g : gates) psi.apply_gate(g.matrix, g.sites);

  FreeEnergyResult out;
  out.e = expectation_mpo(psi, ctx.hamiltonian);
  out.s = psi.entanglement_entropy(ctx.ancilla_cut);
  out.f = out.e - out.s / ctx.beta;
  out.discarded_weight = psi.cumulative_discarded_weight();
  out.truncation_warning = out.discarded_weight > ctx.truncation_warn_threshold;
  return out;
}

namespace {

struct RestartResult {
  RestartOutcome outcome;
  std::vector<double> theta;
  std::vector<std::pair<std::size_t, double>> trace;
  bool truncation_warning = false;
};

RestartResult run_restart(const ObjectiveContext& ctx, const PrepareOptions& options,
                          std::size_t restart, std::size_t n_params) {
  std::mt19937_64 rng(derive_seed(options.seed, restart, 7));
  std::vector<double> theta0(n_params);
  for (auto& t : theta0) t = uniform_in(rng, -M_PI, M_PI);

  RestartResult rr;
  rr.outcome.restart = restart;
  std::size_t evals = 0;
  double best_seen = std::numeric_limits<double>::infinity();
  auto objective = [&](const std::vector<double>& theta) {
    const auto fe = free_energy(theta, ctx);
    rr.truncation_warning = rr.truncation_warning || fe.truncation_warning;
    if (fe.f < best_seen) {
      best_seen = fe.f;
      rr.trace.emplace_back(evals, fe.f);
    }
    ++evals;
    return fe.f;
  };

  const OptimResult res =
      options.use_nelder_mead
          ? nelder_mead_minimize(objective, theta0, options.max_iter, options.rho_begin,
                                 options.rho_end)
          : cobyla_minimize(objective, theta0, options.max_iter, options.rho_begin,
                            options.rho_end);
  rr.outcome.f = res.f;
  rr.outcome.evaluations = res.evaluations;
  rr.outcome.converged = res.converged;
  rr.theta = res.x;
  return rr;
}

}  // namespace

PrepRecord multistart_prepare(const Circuit& circuit, const HamiltonianSpec& spec, double beta,
                              std::size_t chi_max, double svd_cutoff,
                              const PrepareOptions& options) {
  require(options.restarts >= 1, "multistart_prepare: need at least one restart");
  const ObjectiveContext ctx = make_objective_context(circuit, spec, beta, chi_max, svd_cutoff);
  const std::size_t n_params = circuit.n_params;

  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = options.threads == 0 ? hw : options.threads;

  std::vector<RestartResult> results(options.restarts);
  std::vector<std::string> failures;
  for (std::size_t base = 0; base < options.restarts; base += workers) {
    const std::size_t batch = std::min(workers, options.restarts - base);
    std::vector<std::future<RestartResult>> futs;
    futs.reserve(batch);
    for (std::size_t k = 0; k < batch; ++k)
      futs.push_back(std::async(std::launch::async, run_restart, std::cref(ctx),
                                std::cref(options), base + k, n_params));
    for (std::size_t k = 0; k < batch; ++k) {
      try {
        results[base + k] = futs[k].get();
      } catch (const std::exception& e) {
        results[base + k].outcome.evaluations = 0;
        failures.emplace_back(e.what());
      }
    }
  }

  std::size_t best = options.restarts;  // sentinel
  for (std::size_t r = 0; r < options.restarts; ++r) {
    if (results[r].outcome.evaluations == 0) continue;  // aborted restart
    if (best == options.restarts || results[r].outcome.f < results[best].outcome.f) best = r;
  }
  if (best == options.restarts) {
    std::string msg = "multistart_prepare: all restarts aborted";
    for (const auto& f : failures) msg += "; " + f;
    throw std::runtime_error(msg);
  }

  // recompute the winner's terms so F = E - S/beta holds exactly in the record
  const auto fe = free_energy(results[best].theta, ctx);

  PrepRecord rec;
  rec.beta = ctx.beta;
  rec.beta_requested = beta;
  rec.beta_clamped = ctx.beta_clamped;
  rec.theta_star = results[best].theta;
  rec.free_energy_value = fe.e - fe.s / ctx.beta;
  rec.energy = fe.e;
  rec.entropy = fe.s;
  rec.restarts_run = options.restarts;
  rec.best_restart = best;
  rec.iterations_used = results[best].outcome.evaluations;
  rec.seed = options.seed;
  for (const auto& r : results) rec.restart_outcomes.push_back(r.outcome);
  rec.convergence_trace = results[best].trace;
  rec.truncation_warning = results[best].truncation_warning;
  return rec;
}

double infidelity(const Matrix& rho, const Matrix& sigma) {
  require(rho.rows() == rho.cols() && sigma.rows() == sigma.cols() && rho.rows() == sigma.rows(),
          "infidelity: dimension mismatch");
  require(rho.rows() <= (1 << 12), "infidelity: dense-only diagnostic, 12 sites max");
  auto check_state = [](const Matrix& m, const char* name) {
    require(std::abs(m.trace().real() - 1.0) < 1e-8 && std::abs(m.trace().imag()) < 1e-10,
            std::string("infidelity: ") + name + " must have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    require(es.eigenvalues().minCoeff() > -1e-10,
            std::string("infidelity: ") + name + " is not positive semidefinite");
    return es;
  };
  const auto es_rho = check_state(rho, "rho");
  check_state(sigma, "sigma");

  const Eigen::VectorXd clamped = es_rho.eigenvalues().cwiseMax(0.0);
  const Matrix sqrt_rho = es_rho.eigenvectors() * clamped.cwiseSqrt().asDiagonal() *
                          es_rho.eigenvectors().adjoint();
  const Matrix inner = sqrt_rho * sigma * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    tr += std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  const double inf = 1.0 - tr * tr;
  return std::clamp(inf, 0.0, 1.0);
}

}  // namespace gibbsmps
