#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gibbsmps/mpo.hpp"

namespace gibbsmps {

enum class PauliAxis { X, Y, Z };

struct PauliOp {
  std::size_t site;
  PauliAxis axis;
};

/// Real-coefficient Pauli string supported on one or more sites.
struct PauliTerm {
  double coeff;
  std::vector<PauliOp> ops;
};

enum class LatticeKind { Chain, Grid };

/// Open-boundary chain or rectangular grid. Grid sites are numbered
/// row-major: site = row * cols + col.
struct Lattice {
  LatticeKind kind = LatticeKind::Chain;
  std::size_t rows = 1;
  std::size_t cols = 0;

  static Lattice chain(std::size_t n);
  static Lattice grid(std::size_t rows, std::size_t cols);

  std::size_t n_sites() const { return rows * cols; }
  /// Each nearest-neighbor pair exactly once, (low site, high site).
  std::vector<std::pair<std::size_t, std::size_t>> bonds() const;
};

enum class ModelKind { TFIM, XXZ };

struct HamiltonianSpec {
  ModelKind model = ModelKind::TFIM;
  Lattice lattice;
  double coupling = 1.0;    // J
  double field = 0.0;       // h (TFIM)
  double anisotropy = 0.0;  // Delta (XXZ)
  std::vector<PauliTerm> terms;
};

/// H = -J sum_<ij> sz_i sz_j - h sum_i sx_i
HamiltonianSpec tfim(const Lattice& lattice, double coupling, double field);

/// H = -J sum_<ij> (sx sx + sy sy + Delta sz sz), chains only.
HamiltonianSpec xxz(const Lattice& lattice, double coupling, double anisotropy);

/// Boustrophedon grid-to-chain order: even rows left-to-right, odd rows
/// right-to-left. Returns site -> chain index (identity for 1 x N).
std::vector<std::size_t> snake_map(std::size_t rows, std::size_t cols);

/// Largest chain distance any lattice bond spans under the given layout.
std::size_t max_bond_span(const HamiltonianSpec& spec, const std::vector<std::size_t>& layout);

/// Compiles the Pauli sum to an MPO over a chain of `n_total` sites
/// (n_total >= lattice sites; uncovered positions act as identity).
/// `layout` maps each lattice site to its chain position. Long-range terms
/// are carried through intermediate bonds finite-state-machine style, one
/// channel per open term.
Mpo to_mpo(const HamiltonianSpec& spec, const std::vector<std::size_t>& layout,
           std::size_t n_total);

/// Convenience: identity layout over exactly the lattice sites.
Mpo to_mpo(const HamiltonianSpec& spec);

/// Dense matrix of a Pauli-term sum on n_sites qubits (n_sites <= 12).
Matrix dense_pauli_sum(const std::vector<PauliTerm>& terms, std::size_t n_sites);

Matrix pauli_matrix(PauliAxis axis);

}  // namespace gibbsmps
