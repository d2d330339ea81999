#include "gibbsmps/ansatz.hpp"

namespace gibbsmps {

Circuit build_hea(const AnsatzConfig& cfg) {
  require(cfg.family == AnsatzFamily::HEA, "build_hea: config family is not HEA");
  require(cfg.layers >= 1, "build_hea: need at least one layer");
  require(cfg.n_physical >= 1 && cfg.n_ancilla >= 1, "build_hea: need physical and ancilla qubits");

  const std::size_t n = cfg.n_physical + cfg.n_ancilla;
  Circuit c;
  c.n_physical = cfg.n_physical;
  c.n_ancilla = cfg.n_ancilla;
  c.layout = identity_layout(n);

  int slot = 0;
  auto ry_layer = [&] {
    for (std::size_t q = 0; q < n; ++q)
      c.gates.push_back({GateKind::RY, {static_cast<int>(q), -1}, slot++});
  };

  ry_layer();
  for (std::size_t l = 0; l < cfg.layers; ++l) {
    for (std::size_t q = 0; q + 1 < n; ++q) {
      if (cfg.entangler == EntanglerKind::CNOT)
        c.gates.push_back({GateKind::CNOT, {static_cast<int>(q), static_cast<int>(q + 1)}});
      else
        c.gates.push_back({GateKind::RZZ, {static_cast<int>(q), static_cast<int>(q + 1)}, slot++});
    }
    ry_layer();
  }
  c.n_params = static_cast<std::size_t>(slot);
  c.validate();
  return c;
}

Circuit build_tfda(const AnsatzConfig& cfg) {
  require(cfg.family == AnsatzFamily::TFDA, "build_tfda: config family is not TFDA");
  require(cfg.model.has_value(), "build_tfda: config needs a model");
  require(cfg.n_ancilla == cfg.n_physical, "build_tfda: requires n_ancilla = n_physical");
  const HamiltonianSpec& model = *cfg.model;
  require(model.lattice.n_sites() == cfg.n_physical, "build_tfda: model size mismatch");

  const std::size_t np = cfg.n_physical;
  Circuit c;
  c.n_physical = np;
  c.n_ancilla = np;
  c.layout = identity_layout(2 * np);

  // |TFD(0)>: one Bell pair per physical-ancilla pair
  for (std::size_t i = 0; i < np; ++i) {
    c.gates.push_back({GateKind::H, {static_cast<int>(i), -1}});
    c.gates.push_back({GateKind::CNOT, {static_cast<int>(i), static_cast<int>(np + i)}});
  }

  const auto bonds = model.lattice.bonds();
  int slot = 0;
  auto intra_two_site = [&](GateKind kind, int s) {
    for (const auto& [i, j] : bonds) {
      c.gates.push_back({kind, {static_cast<int>(i), static_cast<int>(j)}, s});
      c.gates.push_back({kind, {static_cast<int>(np + i), static_cast<int>(np + j)}, s});
    }
  };

  for (std::size_t l = 0; l < cfg.layers; ++l) {
    if (model.model == ModelKind::TFIM) {
      intra_two_site(GateKind::RZZ, slot);
      for (std::size_t q = 0; q < 2 * np; ++q)
        c.gates.push_back({GateKind::RX, {static_cast<int>(q), -1}, slot + 1});
      for (std::size_t i = 0; i < np; ++i)
        c.gates.push_back({GateKind::RXX, {static_cast<int>(i), static_cast<int>(np + i)}, slot + 2});
      slot += 3;
    } else {
      intra_two_site(GateKind::RXX, slot);
      intra_two_site(GateKind::RYY, slot + 1);
      intra_two_site(GateKind::RZZ, slot + 2);
      for (std::size_t i = 0; i < np; ++i)
        c.gates.push_back({GateKind::RXX, {static_cast<int>(i), static_cast<int>(np + i)}, slot + 3});
      slot += 4;
    }
  }
  c.n_params = static_cast<std::size_t>(slot);
  c.validate();
  return c;
}

Circuit build_ansatz(const AnsatzConfig& cfg) {
  return cfg.family == AnsatzFamily::HEA ? build_hea(cfg) : build_tfda(cfg);
}

}  // namespace gibbsmps
