#pragma once

#include <cstddef>
#include <stdexcept>

#include "gibbsmps/models.hpp"

namespace gibbsmps {

/// Raised when an exact oracle is asked for more sites than it can afford.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ReferenceSource { DenseED, BdG, QMC };

/// One benchmark value with its provenance; stderr is 0 for exact sources.
struct ThermalReference {
  ReferenceSource source = ReferenceSource::DenseED;
  double beta = 0.0;
  double energy_density = 0.0;
  double stderr_ = 0.0;
  std::size_t n_samples = 0;
};

/// rho = exp(-beta H) / Tr exp(-beta H), by eigendecomposition (never matrix
/// inversion, so h -> 0 degeneracies are harmless). Up to 12 sites.
Matrix dense_gibbs(const HamiltonianSpec& spec, double beta);

/// -beta^{-1} ln Z, eigenvalue-shifted for stability.
double dense_free_energy(const HamiltonianSpec& spec, double beta);

/// Tr(rho H) at inverse temperature beta.
double dense_thermal_energy(const HamiltonianSpec& spec, double beta);

/// Exact 1D TFIM thermal energy density for an open chain: Jordan-Wigner to
/// free fermions, the N x N Bogoliubov-de Gennes matrix's singular values
/// give the single-particle energies, and all 2^N occupation configurations
/// are Boltzmann-summed. The spectrum is memoized per (N, J, h); N <= 24.
double bdg_thermal_energy(std::size_t n, double coupling, double field, double beta);

/// The BdG single-particle energies themselves (ascending).
std::vector<double> bdg_spectrum(std::size_t n, double coupling, double field);

/// chi = (beta/N^2) (<M^2> - <M>^2) with M = sum_i sigma_i^z, on the dense
/// Gibbs state.
double exact_susceptibility(const HamiltonianSpec& spec, double beta);

/// c_v = (beta^2/N^2) (<H^2> - <H>^2) on the dense Gibbs state.
double exact_specific_heat(const HamiltonianSpec& spec, double beta);

/// <M_tot> on the dense Gibbs state.
double exact_magnetization(const HamiltonianSpec& spec, double beta);

/// Connected two-point matrix C^z_ij = <sz_i sz_j> - <sz_i><sz_j>.
Eigen::MatrixXd exact_correlations(const HamiltonianSpec& spec, double beta);

}  // namespace gibbsmps
