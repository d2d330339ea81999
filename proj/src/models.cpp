#include "gibbsmps/models.hpp"

#include <algorithm>
#include <map>

namespace gibbsmps {

Lattice Lattice::chain(std::size_t n) {
  require(n >= 2, "Lattice::chain: need at least 2 sites");
  Lattice l;
  l.kind = LatticeKind::Chain;
  l.rows = 1;
  l.cols = n;
  return l;
}

Lattice Lattice::grid(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1 && rows * cols >= 2, "Lattice::grid: need at least 2 sites");
  Lattice l;
  l.kind = LatticeKind::Grid;
  l.rows = rows;
  l.cols = cols;
  return l;
}

std::vector<std::pair<std::size_t, std::size_t>> Lattice::bonds() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t s = r * cols + c;
      if (c + 1 < cols) out.emplace_back(s, s + 1);
      if (r + 1 < rows) out.emplace_back(s, s + cols);
    }
  }
  return out;
}

HamiltonianSpec tfim(const Lattice& lattice, double coupling, double field) {
  HamiltonianSpec spec;
  spec.model = ModelKind::TFIM;
  spec.lattice = lattice;
  spec.coupling = coupling;
  spec.field = field;
  for (const auto& [i, j] : lattice.bonds())
    spec.terms.push_back({-coupling, {{i, PauliAxis::Z}, {j, PauliAxis::Z}}});
  for (std::size_t i = 0; i < lattice.n_sites(); ++i)
    spec.terms.push_back({-field, {{i, PauliAxis::X}}});
  return spec;
}

HamiltonianSpec xxz(const Lattice& lattice, double coupling, double anisotropy) {
  require(lattice.kind == LatticeKind::Chain, "xxz: chains only");
  HamiltonianSpec spec;
  spec.model = ModelKind::XXZ;
  spec.lattice = lattice;
  spec.coupling = coupling;
  spec.anisotropy = anisotropy;
  for (const auto& [i, j] : lattice.bonds()) {
    spec.terms.push_back({-coupling, {{i, PauliAxis::X}, {j, PauliAxis::X}}});
    spec.terms.push_back({-coupling, {{i, PauliAxis::Y}, {j, PauliAxis::Y}}});
    spec.terms.push_back({-coupling * anisotropy, {{i, PauliAxis::Z}, {j, PauliAxis::Z}}});
  }
  return spec;
}

std::vector<std::size_t> snake_map(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "snake_map: empty grid");
  std::vector<std::size_t> map(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      map[r * cols + c] = r * cols + (r % 2 == 0 ? c : cols - 1 - c);
  return map;
}

std::size_t max_bond_span(const HamiltonianSpec& spec, const std::vector<std::size_t>& layout) {
  std::size_t span = 0;
  for (const auto& [i, j] : spec.lattice.bonds()) {
    const std::size_t a = layout.at(i), b = layout.at(j);
    span = std::max(span, a > b ? a - b : b - a);
  }
  return span;
}

Matrix pauli_matrix(PauliAxis axis) {
  Matrix m = Matrix::Zero(2, 2);
  switch (axis) {
    case PauliAxis::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case PauliAxis::Y: m(0, 1) = cplx{0.0, -1.0}; m(1, 0) = cplx{0.0, 1.0}; break;
    case PauliAxis::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

namespace {

struct ChainTerm {
  double coeff;
  std::vector<std::pair<std::size_t, PauliAxis>> ops;  // (chain position, axis), ascending
  std::size_t first() const { return ops.front().first; }
  std::size_t last() const { return ops.back().first; }
};

void set_block(Tensor& w, std::size_t row, std::size_t col, const Matrix& m, double scale = 1.0) {
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) w(row, a, b, col) += scale * m(a, b);
}

}  // namespace

Mpo to_mpo(const HamiltonianSpec& spec, const std::vector<std::size_t>& layout,
           std::size_t n_total) {
  const std::size_t n_sites = spec.lattice.n_sites();
  require(layout.size() == n_sites, "to_mpo: layout must cover every lattice site");
  {
    std::vector<bool> seen(n_total, false);
    for (auto p : layout) {
      require(p < n_total, "to_mpo: layout position out of range");
      require(!seen[p], "to_mpo: layout must be injective");
      seen[p] = true;
    }
  }
  require(!spec.terms.empty(), "to_mpo: empty term list");

  std::vector<ChainTerm> terms;
  terms.reserve(spec.terms.size());
  for (const auto& t : spec.terms) {
    ChainTerm ct;
    ct.coeff = t.coeff;
    for (const auto& op : t.ops) ct.ops.emplace_back(layout.at(op.site), op.axis);
    std::sort(ct.ops.begin(), ct.ops.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    terms.push_back(std::move(ct));
  }

  // Bond-state bookkeeping. State ids: 0 = "start" (nothing placed yet),
  // 1 = "finished", 2+k = carrier of term k. A state appears at bond b only
  // if it is both reachable and able to finish.
  const std::size_t n_terms = terms.size();
  auto states_at = [&](std::size_t b) {
    std::vector<std::size_t> states;
    if (b < n_total) states.push_back(0);
    if (b > 0) states.push_back(1);
    for (std::size_t k = 0; k < n_terms; ++k)
      if (terms[k].first() < b && b <= terms[k].last()) states.push_back(2 + k);
    return states;
  };

  const Matrix eye = Matrix::Identity(2, 2);
  Mpo mpo;
  mpo.tensors.reserve(n_total);
  std::vector<std::size_t> left = states_at(0);
  for (std::size_t site = 0; site < n_total; ++site) {
    const std::vector<std::size_t> right = states_at(site + 1);
    std::map<std::size_t, std::size_t> lidx, ridx;
    for (std::size_t i = 0; i < left.size(); ++i) lidx[left[i]] = i;
    for (std::size_t i = 0; i < right.size(); ++i) ridx[right[i]] = i;

    Tensor w({left.size(), 2, 2, right.size()});
    if (lidx.count(0) && ridx.count(0)) set_block(w, lidx[0], ridx[0], eye);
    if (lidx.count(1) && ridx.count(1)) set_block(w, lidx[1], ridx[1], eye);

    for (std::size_t k = 0; k < n_terms; ++k) {
      const ChainTerm& t = terms[k];
      if (site < t.first() || site > t.last()) continue;
      const Matrix* op = nullptr;
      Matrix opm;
      for (const auto& [pos, axis] : t.ops)
        if (pos == site) {
          opm = pauli_matrix(axis);
          op = &opm;
        }
      if (t.first() == t.last()) {
        // single-site term
        set_block(w, lidx.at(0), ridx.at(1), *op, t.coeff);
      } else if (site == t.first()) {
        set_block(w, lidx.at(0), ridx.at(2 + k), *op, t.coeff);
      } else if (site == t.last()) {
        set_block(w, lidx.at(2 + k), ridx.at(1), *op);
      } else {
        set_block(w, lidx.at(2 + k), ridx.at(2 + k), op ? *op : eye);
      }
    }
    mpo.tensors.push_back(std::move(w));
    left = right;
  }
  return mpo;
}

Mpo to_mpo(const HamiltonianSpec& spec) {
  std::vector<std::size_t> layout(spec.lattice.n_sites());
  for (std::size_t i = 0; i < layout.size(); ++i) layout[i] = i;
  return to_mpo(spec, layout, layout.size());
}

Matrix dense_pauli_sum(const std::vector<PauliTerm>& terms, std::size_t n_sites) {
  require(n_sites <= 12, "dense_pauli_sum: limited to 12 sites");
  const std::size_t dim = std::size_t{1} << n_sites;
  Matrix h = Matrix::Zero(dim, dim);
  const Matrix eye = Matrix::Identity(2, 2);
  for (const auto& term : terms) {
    Matrix acc = Matrix::Identity(1, 1) * term.coeff;
    for (std::size_t s = 0; s < n_sites; ++s) {
      Matrix factor = eye;
      for (const auto& op : term.ops)
        if (op.site == s) factor = pauli_matrix(op.axis);
      Matrix next(acc.rows() * 2, acc.cols() * 2);
      for (Eigen::Index i = 0; i < acc.rows(); ++i)
        for (Eigen::Index j = 0; j < acc.cols(); ++j)
          next.block(i * 2, j * 2, 2, 2) = acc(i, j) * factor;
      acc = std::move(next);
    }
    h += acc;
  }
  return h;
}

}  // namespace gibbsmps
