#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gibbsmps/circuit.hpp"
#include "gibbsmps/models.hpp"
#include "gibbsmps/mpo.hpp"
#include "gibbsmps/optimize.hpp"

namespace gibbsmps {

/// Everything a free-energy evaluation needs: the routed circuit, the
/// Hamiltonian compiled as an MPO over the full chain (identity on the
/// ancilla block), the clamped inverse temperature, and the truncation
/// budget. The ancilla cut sits at n_physical under the block layout.
struct ObjectiveContext {
  Circuit routed;
  Mpo hamiltonian;
  double beta = 1.0;
  bool beta_clamped = false;
  std::size_t chi_max = 128;
  double svd_cutoff = 1e-12;
  std::size_t ancilla_cut = 0;
  double truncation_warn_threshold = 1e-4;
};

/// Requests with beta below this value are evaluated here instead; the free
/// energy diverges at beta = 0.
constexpr double kBetaFloor = 1e-5;

/// Compiles circuit + model into an evaluation context. Grid models are laid
/// out on the chain in snake order; chains use the identity layout.
ObjectiveContext make_objective_context(const Circuit& circuit, const HamiltonianSpec& spec,
                                        double beta, std::size_t chi_max, double svd_cutoff);

struct FreeEnergyResult {
  double f = 0.0;
  double e = 0.0;
  double s = 0.0;
  double discarded_weight = 0.0;
  bool truncation_warning = false;
};

/// F = E - S / beta on the circuit state: E = <psi|H (x) I|psi>, S = the
/// entanglement entropy across the physical/ancilla cut.
FreeEnergyResult free_energy(const std::vector<double>& theta, const ObjectiveContext& ctx);

struct RestartOutcome {
  std::size_t restart = 0;
  double f = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Optimization artifact for one (circuit, model, beta) preparation.
struct PrepRecord {
  double beta = 0.0;            // effective value the objective used
  double beta_requested = 0.0;
  bool beta_clamped = false;
  std::vector<double> theta_star;
  double free_energy_value = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  std::size_t restarts_run = 0;
  std::size_t best_restart = 0;
  std::size_t iterations_used = 0;
  std::uint64_t seed = 0;
  std::vector<RestartOutcome> restart_outcomes;
  std::vector<std::pair<std::size_t, double>> convergence_trace;  // (evaluation, F)
  bool truncation_warning = false;
};

struct PrepareOptions {
  std::size_t restarts = 10;
  std::size_t max_iter = 10000;
  double rho_begin = 0.5;
  double rho_end = 1e-6;
  std::uint64_t seed = 0;
  std::size_t threads = 0;        // 0 = hardware concurrency
  bool use_nelder_mead = false;   // simplex fallback for robustness studies
};

/// Runs `restarts` independent optimizations from theta ~ U(-pi, pi)
/// (seeded per restart index, so adding restarts never changes earlier ones)
/// and keeps the record with the lowest free energy. Restarts run on a
/// thread pool; the merge is order-independent.
PrepRecord multistart_prepare(const Circuit& circuit, const HamiltonianSpec& spec, double beta,
                              std::size_t chi_max, double svd_cutoff,
                              const PrepareOptions& options);

/// 1 - (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1]. Dense-only
/// diagnostic; inputs must be trace-1 PSD within 1e-10.
double infidelity(const Matrix& rho, const Matrix& sigma);

}  // namespace gibbsmps
