#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "gibbsmps/tensor.hpp"

namespace gibbsmps {

enum class GateKind { RX, RY, RZ, RZZ, RXX, RYY, H, CNOT, SWAP };

bool is_two_site(GateKind kind);
bool is_parameterized(GateKind kind);
const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

/// One circuit element. Parameterized kinds reference a slot of the shared
/// parameter vector; several gates may share a slot. `adjoint` binds the
/// conjugate transpose (for rotations: the negated angle).
struct Gate {
  GateKind kind;
  std::array<int, 2> sites{-1, -1};  // second entry -1 for one-site gates
  int param_slot = -1;
  bool adjoint = false;

  bool operator==(const Gate&) const = default;
};

/// Ordered gate list over physical + ancilla registers, plus the register
/// permutation onto the 1D chain (logical index -> chain position).
struct Circuit {
  std::size_t n_physical = 0;
  std::size_t n_ancilla = 0;
  std::vector<std::size_t> layout;
  std::vector<Gate> gates;
  std::size_t n_params = 0;

  std::size_t n_qubits() const { return n_physical + n_ancilla; }
  std::size_t chain_position(std::size_t logical) const { return layout.at(logical); }

  /// Checks site ranges, slot ranges and that every slot is referenced.
  void validate() const;

  bool operator==(const Circuit&) const = default;
};

std::vector<std::size_t> identity_layout(std::size_t n);

/// Concrete unitary ready for MPS application, sites in chain positions.
struct BoundGate {
  Tensor matrix;  // 2x2 or 4x4
  std::vector<std::size_t> sites;
};

/// Rotation convention: R_P(theta) = exp(-i theta P / 2). `angle` is ignored
/// for the fixed kinds H, CNOT, SWAP. Two-site matrices are in (first site,
/// second site) tensor order; CNOT control is the first site.
Tensor gate_matrix(GateKind kind, double angle);

/// Resolves every gate against theta (length must equal n_params) into
/// concrete unitaries on chain positions.
std::vector<BoundGate> bind_parameters(const Circuit& circuit, const std::vector<double>& theta);

/// Rewrites long-range two-site gates into SWAP-ladder brackets so that every
/// two-site gate acts on adjacent chain positions. Greedy nearest insertion:
/// the lower qubit is swapped up next to the higher one and swapped back
/// immediately after the gate, so the layout is preserved. The returned
/// circuit is expressed directly in chain positions (identity layout).
Circuit route_to_chain(const Circuit& circuit);

/// Line-oriented text form. Header lines carry the counts and layout; then
/// one gate per line: `KIND site[,site] [slot]` where slot is the parameter
/// index, prefixed with `!` for adjoint gates. Round-trips bit-exactly.
std::string to_text(const Circuit& circuit);
Circuit circuit_from_text(const std::string& text);

}  // namespace gibbsmps
