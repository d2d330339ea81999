#pragma once

#include <vector>

#include "gibbsmps/mps.hpp"
#include "gibbsmps/tensor.hpp"

namespace gibbsmps {

/// Matrix product operator over qubits. Site tensors are rank-4 with axes
/// (left bond, physical out, physical in, right bond); boundary bonds have
/// dimension 1.
struct Mpo {
  std::vector<Tensor> tensors;

  std::size_t n_sites() const { return tensors.size(); }
  std::vector<std::size_t> bond_dims() const;

  /// Dense matrix of the represented operator. Limited to 12 sites.
  Matrix to_dense() const;

  static Mpo identity(std::size_t n_sites);
};

/// Operator product a*b as an MPO with bond dimension D_a * D_b.
Mpo mpo_product(const Mpo& a, const Mpo& b);

/// <psi| op |psi>. Requires matching site counts and a Hermitian operator;
/// the imaginary residual must stay below 1e-8 and is discarded.
double expectation_mpo(const MpsState& psi, const Mpo& op);

}  // namespace gibbsmps
