#pragma once

#include <optional>

#include "gibbsmps/circuit.hpp"
#include "gibbsmps/models.hpp"

namespace gibbsmps {

enum class AnsatzFamily { HEA, TFDA };
enum class EntanglerKind { CNOT, RZZ };

struct AnsatzConfig {
  AnsatzFamily family = AnsatzFamily::HEA;
  std::size_t n_physical = 0;
  std::size_t n_ancilla = 0;
  std::size_t layers = 1;
  EntanglerKind entangler = EntanglerKind::CNOT;   // HEA only
  std::optional<HamiltonianSpec> model;            // TFDA only
};

/// Hardware-efficient ansatz: an RY rotation layer on every qubit, then per
/// layer a linear entangler chain over the full chain (physical block first,
/// ancilla block appended) followed by another RY layer. Every rotation has
/// its own parameter. n_params = n(L+1) with the CNOT entangler, plus
/// (n-1)L for the RZZ entangler.
Circuit build_hea(const AnsatzConfig& cfg);

/// Thermofield-double ansatz: Bell-pair preparation (H + CNOT per
/// physical-ancilla pair), then L layers of model evolution with one shared
/// parameter per gate group per layer:
///   TFIM: intra RZZ per bond (both registers), intra RX per site (both
///         registers), inter RXX per pair           -> 3 params / layer
///   XXZ:  intra RXX, RYY, RZZ per bond (both registers), inter RXX per pair
///                                                  -> 4 params / layer
Circuit build_tfda(const AnsatzConfig& cfg);

Circuit build_ansatz(const AnsatzConfig& cfg);

}  // namespace gibbsmps
