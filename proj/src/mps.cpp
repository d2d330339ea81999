#include "gibbsmps/mps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace gibbsmps {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kSchmidtFloor = 1e-14;

bool is_unitary(const Matrix& g) {
  const Matrix r = g.adjoint() * g - Matrix::Identity(g.rows(), g.cols());
  return r.cwiseAbs().maxCoeff() <= kUnitaryTol;
}

}  // namespace

MpsState MpsState::from_product_state(const std::string& bits, std::size_t chi_max,
                                      double svd_cutoff) {
  require(!bits.empty(), "from_product_state: bit string must be nonempty");
  MpsState psi;
  psi.chi_max_ = chi_max;
  psi.svd_cutoff_ = svd_cutoff;
  psi.tensors_.reserve(bits.size());
  for (char c : bits) {
    require(c == '0' || c == '1', "from_product_state: bits must be 0 or 1");
    Tensor t({1, 2, 1});
    t(0, c == '1' ? 1 : 0, 0) = 1.0;
    psi.tensors_.push_back(std::move(t));
  }
  psi.center_ = 0;
  return psi;
}

std::vector<std::size_t> MpsState::bond_dims() const {
  std::vector<std::size_t> dims;
  dims.reserve(n_sites() + 1);
  dims.push_back(1);
  for (const auto& t : tensors_) dims.push_back(t.dim(2));
  return dims;
}

void MpsState::set_truncation(std::size_t chi_max, double svd_cutoff) {
  require(chi_max >= 1, "set_truncation: chi_max must be >= 1");
  require(svd_cutoff >= 0.0, "set_truncation: svd_cutoff must be >= 0");
  chi_max_ = chi_max;
  svd_cutoff_ = svd_cutoff;
}

double MpsState::norm() const {
  if (center_) return tensors_[*center_].norm();
  // full transfer-matrix contraction
  Tensor env({1, 1});
  env(0, 0) = 1.0;
  for (const auto& t : tensors_) {
    Tensor a = tensordot(env, t, {0}, {0});          // (bra, d, r)
    env = tensordot(t.conj(), a, {0, 1}, {0, 1});    // (r_bra, r_ket) -> keep (ket, bra) order
    env = env.permute({1, 0});
  }
  return std::sqrt(std::abs(env(0, 0).real()));
}

void MpsState::normalize() {
  if (!center_) canonicalize(0);
  const double n = tensors_[*center_].norm();
  require(n > 0.0, "normalize: zero-norm state");
  tensors_[*center_] *= cplx{1.0 / n, 0.0};
}

void MpsState::move_center_right() {
  const std::size_t c = *center_;
  const Tensor& t = tensors_[c];
  const std::size_t l = t.dim(0), r = t.dim(2);
  const Matrix m = t.to_matrix(2);  // (l*2, r)
  Eigen::HouseholderQR<Matrix> qr(m);
  const std::size_t k = std::min<std::size_t>(l * 2, r);
  Matrix q = qr.householderQ() * Matrix::Identity(l * 2, k);
  Matrix rr = q.adjoint() * m;
  tensors_[c] = Tensor::from_matrix(q).reshape({l, 2, k});
  Tensor rt = Tensor::from_matrix(rr);  // (k, r)
  tensors_[c + 1] = tensordot(rt, tensors_[c + 1], {1}, {0});
  center_ = c + 1;
}

void MpsState::move_center_left() {
  const std::size_t c = *center_;
  const Tensor& t = tensors_[c];
  const std::size_t l = t.dim(0), r = t.dim(2);
  const Matrix m = t.to_matrix(1);  // (l, 2*r)
  // LQ via QR of the adjoint: M = L Q with Q Q^dag = I
  Eigen::HouseholderQR<Matrix> qr(m.adjoint());
  const std::size_t k = std::min<std::size_t>(l, 2 * r);
  Matrix qt = qr.householderQ() * Matrix::Identity(2 * r, k);
  Matrix q = qt.adjoint();          // (k, 2r), orthonormal rows
  Matrix ll = m * qt;               // (l, k)
  tensors_[c] = Tensor::from_matrix(q).reshape({k, 2, r});
  Tensor lt = Tensor::from_matrix(ll);
  Tensor prev = tensordot(tensors_[c - 1], lt, {2}, {0});
  tensors_[c - 1] = std::move(prev);
  center_ = c - 1;
}

void MpsState::canonicalize(std::size_t center) {
  require(center < n_sites(), "canonicalize: center out of range");
  if (!center_) {
    // right-canonicalize everything; site 0 becomes the center
    for (std::size_t i = n_sites(); i-- > 1;) {
      center_ = i;
      move_center_left();
    }
    center_ = 0;
  }
  while (*center_ < center) move_center_right();
  while (*center_ > center) move_center_left();
}

void MpsState::ensure_center_in(std::size_t lo, std::size_t hi) {
  if (!center_ || *center_ < lo)
    canonicalize(lo);
  else if (*center_ > hi)
    canonicalize(hi);
}

void MpsState::apply_gate(const Tensor& gate, const std::vector<std::size_t>& sites) {
  if (sites.size() == 1) {
    require(sites[0] < n_sites(), "apply_gate: site out of range");
    require(gate.rank() == 2 && gate.dim(0) == 2 && gate.dim(1) == 2,
            "apply_gate: one-site gate must be 2x2");
    if (!is_unitary(gate.to_matrix(1)))
      throw std::invalid_argument("apply_gate: gate is not unitary");
    apply_one_site(gate, sites[0]);
    return;
  }
  require(sites.size() == 2, "apply_gate: gates act on 1 or 2 sites");
  require(sites[0] < n_sites() && sites[1] < n_sites(), "apply_gate: site out of range");
  if (sites[0] + 1 != sites[1] && sites[1] + 1 != sites[0])
    throw std::invalid_argument(
        "apply_gate: two-site gate on non-adjacent sites; route the circuit first");
  require(gate.rank() == 2 && gate.dim(0) == 4 && gate.dim(1) == 4,
          "apply_gate: two-site gate must be 4x4");
  if (!is_unitary(gate.to_matrix(1)))
    throw std::invalid_argument("apply_gate: gate is not unitary");

  if (sites[0] + 1 == sites[1]) {
    apply_two_site(gate, sites[0]);
  } else {
    // gate given as (q_hi, q_lo): permute to chain order (q_lo, q_hi)
    Tensor g = gate.reshape({2, 2, 2, 2}).permute({1, 0, 3, 2}).reshape({4, 4});
    apply_two_site(g, sites[1]);
  }
}

void MpsState::apply_one_site(const Tensor& gate, std::size_t site) {
  // contracting the physical leg with a unitary preserves isometry
  Tensor t = tensordot(gate, tensors_[site], {1}, {1});  // (out, l, r)
  tensors_[site] = t.permute({1, 0, 2});
}

void MpsState::apply_two_site(const Tensor& gate, std::size_t left) {
  ensure_center_in(left, left + 1);
  Tensor theta = tensordot(tensors_[left], tensors_[left + 1], {2}, {0});  // (l,d1,d2,r)
  Tensor g = gate.reshape({2, 2, 2, 2});  // (o1,o2,i1,i2)
  theta = tensordot(theta, g, {1, 2}, {2, 3});  // (l,r,o1,o2)
  theta = theta.permute({0, 2, 3, 1});          // (l,o1,o2,r)
  const std::size_t l = theta.dim(0), r = theta.dim(3);

  auto svd = svd_truncated(theta.reshape({l * 2, 2 * r}), chi_max_, svd_cutoff_);
  const std::size_t k = svd.s.size();

  double kept = 0.0;
  for (double s : svd.s) kept += s * s;
  const double total = kept + svd.discarded_weight;
  // rescale so the gate leaves the norm untouched despite truncation
  const double rescale = kept > 0.0 ? std::sqrt(total / kept) : 1.0;

  tensors_[left] = svd.u.reshape({l, 2, k});
  Matrix sv = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < k; ++i) sv(i, i) = svd.s[i] * rescale;
  Matrix right = sv * svd.v.to_matrix(1);
  tensors_[left + 1] = Tensor::from_matrix(right).reshape({k, 2, r});
  cum_discarded_ += svd.discarded_weight;
  center_ = left + 1;
}

std::vector<double> MpsState::schmidt_values(std::size_t cut) {
  require(cut >= 1 && cut <= n_sites() - 1, "schmidt_values: cut out of range");
  canonicalize(cut - 1);
  const Tensor& t = tensors_[cut - 1];
  const Matrix m = t.to_matrix(2);  // ((l*2), r)
  Eigen::JacobiSVD<Matrix> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double MpsState::entanglement_entropy(std::size_t cut) {
  const auto lambdas = schmidt_values(cut);
  double s = 0.0;
  for (double l : lambdas) {
    if (l < kSchmidtFloor) continue;
    const double p = l * l;
    s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

Vector MpsState::to_statevector() const {
  require(n_sites() <= 20, "to_statevector: dense export limited to 20 sites");
  Matrix acc = tensors_[0].to_matrix(2);  // (2, r) with l = 1
  for (std::size_t i = 1; i < n_sites(); ++i) {
    const Tensor& t = tensors_[i];
    const std::size_t d = acc.rows(), r0 = acc.cols(), r1 = t.dim(2);
    Matrix next = Matrix::Zero(d * 2, r1);
    const Matrix tm = t.to_matrix(1);  // (r0, 2*r1)
    // next[(a,s), b] = sum_c acc[a, c] * t[c, s, b]
    for (std::size_t s = 0; s < 2; ++s) {
      Matrix slice(r0, r1);
      for (std::size_t c = 0; c < r0; ++c)
        for (std::size_t b = 0; b < r1; ++b) slice(c, b) = tm(c, s * r1 + b);
      Matrix part = acc * slice;  // (d, r1)
      for (std::size_t a = 0; a < d; ++a) next.row(a * 2 + s) = part.row(a);
    }
    acc = std::move(next);
  }
  return Eigen::Map<Vector>(acc.data(), acc.rows());
}

Matrix MpsState::reduced_density_matrix(std::size_t prefix) const {
  require(prefix >= 1 && prefix <= n_sites(), "reduced_density_matrix: bad prefix");
  const Vector psi = to_statevector();
  const std::size_t dl = std::size_t{1} << prefix;
  const std::size_t dr = psi.size() / dl;
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      psi.data(), dl, dr);
  return m * m.adjoint();
}

double expectation_one_site(MpsState& state, const Matrix& op, std::size_t site) {
  require(site < state.n_sites(), "expectation_one_site: site out of range");
  state.canonicalize(site);
  const Tensor& t = state.site_tensor(site);
  Tensor o({2, 2});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) o(a, b) = op(a, b);
  Tensor a = tensordot(o, t, {1}, {1});               // (out, l, r)
  Tensor v = tensordot(t.conj(), a, {0, 1, 2}, {1, 0, 2});
  const cplx val = v(0);
  if (std::abs(val.imag()) >= 1e-8)
    throw std::runtime_error("expectation_one_site: operator is not Hermitian enough");
  return val.real();
}

ShotTable sample_shots(const MpsState& state, const std::string& basis, std::size_t n_shots,
                       std::uint64_t seed) {
  require(n_shots > 0, "sample_shots: n_shots must be positive");
  require(basis.size() == state.n_sites(), "sample_shots: basis length must match sites");
  for (char c : basis) require(c == 'Z' || c == 'X', "sample_shots: basis chars must be Z or X");
  if (std::abs(state.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("sample_shots: state must be normalized");

  MpsState rotated = state;
  Tensor h({2, 2});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  h(0, 0) = inv_sqrt2; h(0, 1) = inv_sqrt2; h(1, 0) = inv_sqrt2; h(1, 1) = -inv_sqrt2;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == 'X') rotated.apply_gate(h, {i});
  rotated.canonicalize(0);
  rotated.normalize();

  const std::size_t n = rotated.n_sites();
  // per-site outcome matrices, (l x r) each
  std::vector<std::array<Matrix, 2>> slices(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Tensor& t = rotated.site_tensor(i);
    const std::size_t l = t.dim(0), r = t.dim(2);
    for (std::size_t o = 0; o < 2; ++o) {
      Matrix m(l, r);
      for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = 0; b < r; ++b) m(a, b) = t(a, o, b);
      slices[i][o] = std::move(m);
    }
  }

  ShotTable table;
  table.basis = basis;
  table.n_shots = n_shots;
  table.seed = seed;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::string bits(n, '0');
  for (std::size_t shot = 0; shot < n_shots; ++shot) {
    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::RowVectorXcd w0 = v * slices[i][0];
      const Eigen::RowVectorXcd w1 = v * slices[i][1];
      const double p0 = w0.squaredNorm();
      const double p1 = w1.squaredNorm();
      const double z = p0 + p1;
      const bool one = unit(rng) * z >= p0;
      bits[i] = one ? '1' : '0';
      v = one ? w1 : w0;
      const double nv = v.norm();
      if (nv > 0.0) v /= nv;
    }
    ++table.outcomes[bits];
  }
  return table;
}

}  // namespace gibbsmps
