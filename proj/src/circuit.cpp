#include "gibbsmps/circuit.hpp"

#include <cmath>
#include <sstream>

namespace gibbsmps {

bool is_two_site(GateKind kind) {
  switch (kind) {
    case GateKind::RZZ:
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::CNOT:
    case GateKind::SWAP:
      return true;
    default:
      return false;
  }
}

bool is_parameterized(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RZZ:
    case GateKind::RXX:
    case GateKind::RYY:
      return true;
    default:
      return false;
  }
}

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "RX") return GateKind::RX;
  if (name == "RY") return GateKind::RY;
  if (name == "RZ") return GateKind::RZ;
  if (name == "RZZ") return GateKind::RZZ;
  if (name == "RXX") return GateKind::RXX;
  if (name == "RYY") return GateKind::RYY;
  if (name == "H") return GateKind::H;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "SWAP") return GateKind::SWAP;
  throw std::invalid_argument("unknown gate kind: " + name);
}

void Circuit::validate() const {
  const std::size_t n = n_qubits();
  require(layout.size() == n, "Circuit: layout must cover all qubits");
  {
    std::vector<bool> seen(n, false);
    for (auto p : layout) {
      require(p < n && !seen[p], "Circuit: layout must be a permutation");
      seen[p] = true;
    }
  }
  std::vector<bool> slot_used(n_params, false);
  for (const auto& g : gates) {
    const bool two = is_two_site(g.kind);
    require(g.sites[0] >= 0 && static_cast<std::size_t>(g.sites[0]) < n,
            "Circuit: gate site out of range");
    if (two) {
      require(g.sites[1] >= 0 && static_cast<std::size_t>(g.sites[1]) < n,
              "Circuit: gate site out of range");
      require(g.sites[0] != g.sites[1], "Circuit: two-site gate needs distinct sites");
    } else {
      require(g.sites[1] == -1, "Circuit: one-site gate carries one site");
    }
    if (is_parameterized(g.kind)) {
      require(g.param_slot >= 0 && static_cast<std::size_t>(g.param_slot) < n_params,
              "Circuit: parameter slot out of range");
      slot_used[g.param_slot] = true;
    } else {
      require(g.param_slot == -1, "Circuit: fixed gate cannot carry a slot");
      require(!g.adjoint, "Circuit: fixed kinds are self-inverse; adjoint flag not allowed");
    }
  }
  for (std::size_t s = 0; s < n_params; ++s)
    require(slot_used[s], "Circuit: unused parameter slot");
}

std::vector<std::size_t> identity_layout(std::size_t n) {
  std::vector<std::size_t> layout(n);
  for (std::size_t i = 0; i < n; ++i) layout[i] = i;
  return layout;
}

Tensor gate_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  const cplx mi{0.0, -1.0};
  switch (kind) {
    case GateKind::RX: {
      Tensor g({2, 2});
      g(0, 0) = c; g(0, 1) = mi * s;
      g(1, 0) = mi * s; g(1, 1) = c;
      return g;
    }
    case GateKind::RY: {
      Tensor g({2, 2});
      g(0, 0) = c; g(0, 1) = -s;
      g(1, 0) = s; g(1, 1) = c;
      return g;
    }
    case GateKind::RZ: {
      Tensor g({2, 2});
      g(0, 0) = std::exp(mi * (angle / 2.0));
      g(1, 1) = std::exp(-mi * (angle / 2.0));
      return g;
    }
    case GateKind::RZZ: {
      Tensor g({4, 4});
      const cplx em = std::exp(mi * (angle / 2.0)), ep = std::exp(-mi * (angle / 2.0));
      g(0, 0) = em; g(1, 1) = ep; g(2, 2) = ep; g(3, 3) = em;
      return g;
    }
    case GateKind::RXX: {
      Tensor g({4, 4});
      for (std::size_t i = 0; i < 4; ++i) g(i, i) = c;
      g(0, 3) = mi * s; g(1, 2) = mi * s; g(2, 1) = mi * s; g(3, 0) = mi * s;
      return g;
    }
    case GateKind::RYY: {
      Tensor g({4, 4});
      for (std::size_t i = 0; i < 4; ++i) g(i, i) = c;
      g(0, 3) = -mi * s; g(1, 2) = mi * s; g(2, 1) = mi * s; g(3, 0) = -mi * s;
      return g;
    }
    case GateKind::H: {
      Tensor g({2, 2});
      const double r = 1.0 / std::sqrt(2.0);
      g(0, 0) = r; g(0, 1) = r; g(1, 0) = r; g(1, 1) = -r;
      return g;
    }
    case GateKind::CNOT: {
      Tensor g({4, 4});
      g(0, 0) = 1.0; g(1, 1) = 1.0; g(2, 3) = 1.0; g(3, 2) = 1.0;
      return g;
    }
    case GateKind::SWAP: {
      Tensor g({4, 4});
      g(0, 0) = 1.0; g(1, 2) = 1.0; g(2, 1) = 1.0; g(3, 3) = 1.0;
      return g;
    }
  }
  throw std::logic_error("gate_matrix: unhandled kind");
}

namespace {

Tensor adjoint_of(const Tensor& m) {
  const std::size_t d = m.dim(0);
  Tensor out({d, d});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

}  // namespace

std::vector<BoundGate> bind_parameters(const Circuit& circuit, const std::vector<double>& theta) {
  require(theta.size() == circuit.n_params, "bind_parameters: theta length mismatch");
  circuit.validate();
  std::vector<BoundGate> bound;
  bound.reserve(circuit.gates.size());
  for (const auto& g : circuit.gates) {
    const double angle = is_parameterized(g.kind) ? theta[g.param_slot] : 0.0;
    Tensor m = gate_matrix(g.kind, angle);
    if (g.adjoint) m = adjoint_of(m);
    BoundGate bg;
    bg.matrix = std::move(m);
    bg.sites.push_back(circuit.chain_position(g.sites[0]));
    if (is_two_site(g.kind)) bg.sites.push_back(circuit.chain_position(g.sites[1]));
    bound.push_back(std::move(bg));
  }
  return bound;
}

Circuit route_to_chain(const Circuit& circuit) {
  circuit.validate();
  Circuit routed;
  routed.n_physical = circuit.n_physical;
  routed.n_ancilla = circuit.n_ancilla;
  routed.layout = identity_layout(circuit.n_qubits());
  routed.n_params = circuit.n_params;

  for (const auto& g : circuit.gates) {
    if (!is_two_site(g.kind)) {
      Gate ng = g;
      ng.sites[0] = static_cast<int>(circuit.chain_position(g.sites[0]));
      routed.gates.push_back(ng);
      continue;
    }
    const std::size_t p0 = circuit.chain_position(g.sites[0]);
    const std::size_t p1 = circuit.chain_position(g.sites[1]);
    const std::size_t lo = std::min(p0, p1), hi = std::max(p0, p1);
    // swap the lower qubit up until adjacent
    for (std::size_t p = lo; p + 1 < hi; ++p)
      routed.gates.push_back({GateKind::SWAP, {static_cast<int>(p), static_cast<int>(p + 1)}});
    Gate ng = g;
    ng.sites[0] = static_cast<int>(p0 == lo ? hi - 1 : hi);
    ng.sites[1] = static_cast<int>(p1 == lo ? hi - 1 : hi);
    routed.gates.push_back(ng);
    for (std::size_t p = hi - 1; p-- > lo;)
      routed.gates.push_back({GateKind::SWAP, {static_cast<int>(p), static_cast<int>(p + 1)}});
  }
  return routed;
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "nphysical " << circuit.n_physical << "\n";
  os << "nancilla " << circuit.n_ancilla << "\n";
  os << "nparams " << circuit.n_params << "\n";
  os << "layout";
  for (auto p : circuit.layout) os << ' ' << p;
  os << "\n";
  for (const auto& g : circuit.gates) {
    os << gate_kind_name(g.kind) << ' ' << g.sites[0];
    if (is_two_site(g.kind)) os << ',' << g.sites[1];
    if (g.param_slot >= 0) os << ' ' << (g.adjoint ? "!" : "") << g.param_slot;
    os << "\n";
  }
  return os.str();
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream is(text);
  Circuit c;
  std::string line;
  auto parse_count = [&](const std::string& key) {
    require(std::getline(is, line) && line.rfind(key + " ", 0) == 0,
            "circuit_from_text: expected header line " + key);
    return static_cast<std::size_t>(std::stoull(line.substr(key.size() + 1)));
  };
  c.n_physical = parse_count("nphysical");
  c.n_ancilla = parse_count("nancilla");
  c.n_params = parse_count("nparams");
  require(std::getline(is, line) && line.rfind("layout", 0) == 0,
          "circuit_from_text: expected layout line");
  {
    std::istringstream ls(line.substr(6));
    std::size_t p;
    while (ls >> p) c.layout.push_back(p);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream gs(line);
    std::string kind_name, sites_tok, slot_tok;
    gs >> kind_name >> sites_tok;
    Gate g;
    g.kind = gate_kind_from_name(kind_name);
    const auto comma = sites_tok.find(',');
    if (comma == std::string::npos) {
      g.sites = {std::stoi(sites_tok), -1};
    } else {
      g.sites = {std::stoi(sites_tok.substr(0, comma)), std::stoi(sites_tok.substr(comma + 1))};
    }
    if (gs >> slot_tok) {
      if (!slot_tok.empty() && slot_tok[0] == '!') {
        g.adjoint = true;
        slot_tok.erase(0, 1);
      }
      g.param_slot = std::stoi(slot_tok);
    }
    c.gates.push_back(g);
  }
  c.validate();
  return c;
}

}  // namespace gibbsmps
