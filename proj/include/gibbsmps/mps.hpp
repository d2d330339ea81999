#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gibbsmps/shot_table.hpp"
#include "gibbsmps/tensor.hpp"

namespace gibbsmps {

/// Open-boundary matrix product state over qubits.
///
/// Site tensors are rank-3 with axes (left bond, physical = 2, right bond).
/// Boundary bonds have dimension 1. When a canonical center c is tracked,
/// every tensor left of c is a left isometry and every tensor right of c a
/// right isometry; the Schmidt spectrum of any cut is then one SVD away.
class MpsState {
 public:
  MpsState() = default;

  /// |b_0 b_1 ... b_{n-1}> with all bond dimensions 1.
  static MpsState from_product_state(const std::string& bits, std::size_t chi_max = 128,
                                     double svd_cutoff = 1e-12);

  std::size_t n_sites() const { return tensors_.size(); }
  const Tensor& site_tensor(std::size_t i) const { return tensors_.at(i); }

  /// Bond dimensions including the two trivial boundary bonds
  /// (length n_sites + 1).
  std::vector<std::size_t> bond_dims() const;

  std::size_t chi_max() const { return chi_max_; }
  double svd_cutoff() const { return svd_cutoff_; }
  void set_truncation(std::size_t chi_max, double svd_cutoff);

  std::optional<std::size_t> canonical_center() const { return center_; }
  double cumulative_discarded_weight() const { return cum_discarded_; }

  double norm() const;
  void normalize();

  /// Moves the canonical center to `center`, establishing left/right
  /// isometries on the respective sides. Norm-preserving, no truncation.
  void canonicalize(std::size_t center);

  /// Applies a unitary (2x2 on one site, 4x4 on two adjacent sites).
  /// Two-site gates re-truncate the acted bond per (chi_max, svd_cutoff);
  /// the kept Schmidt vector is rescaled so the norm survives truncation,
  /// and the discarded weight is accumulated.
  void apply_gate(const Tensor& gate, const std::vector<std::size_t>& sites);

  /// Schmidt coefficients across cut k (between sites k-1 and k), descending.
  std::vector<double> schmidt_values(std::size_t cut);

  /// Von Neumann entropy -sum lambda^2 ln lambda^2 of the cut, with
  /// 0 ln 0 := 0 and Schmidt values below 1e-14 dropped.
  double entanglement_entropy(std::size_t cut);

  /// Dense statevector, site 0 as the most significant bit. n_sites <= 20.
  Vector to_statevector() const;

  /// Density matrix of the first `prefix` sites (the rest traced out).
  Matrix reduced_density_matrix(std::size_t prefix) const;

 private:
  void move_center_right();
  void move_center_left();
  void ensure_center_in(std::size_t lo, std::size_t hi);
  void apply_one_site(const Tensor& gate, std::size_t site);
  void apply_two_site(const Tensor& gate, std::size_t left);

  std::vector<Tensor> tensors_;
  std::optional<std::size_t> center_;
  std::size_t chi_max_ = 128;
  double svd_cutoff_ = 1e-12;
  double cum_discarded_ = 0.0;
};

/// Draws `n_shots` bitstrings by exact sequential conditional sampling in the
/// given per-site basis ('Z' or 'X', one char per site). Deterministic for a
/// fixed seed.
ShotTable sample_shots(const MpsState& state, const std::string& basis, std::size_t n_shots,
                       std::uint64_t seed);

/// <psi| op_site |psi> for a 2x2 Hermitian operator on one site.
double expectation_one_site(MpsState& state, const Matrix& op, std::size_t site);

}  // namespace gibbsmps
