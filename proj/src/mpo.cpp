#include "gibbsmps/mpo.hpp"

#include <cmath>

namespace gibbsmps {

std::vector<std::size_t> Mpo::bond_dims() const {
  std::vector<std::size_t> dims;
  dims.reserve(tensors.size() + 1);
  dims.push_back(1);
  for (const auto& t : tensors) dims.push_back(t.dim(3));
  return dims;
}

Matrix Mpo::to_dense() const {
  require(n_sites() >= 1 && n_sites() <= 12, "Mpo::to_dense: limited to 12 sites");
  // acc[(out...,in...), b] built site by site
  Tensor acc = tensors[0].permute({0, 1, 2, 3});  // (1, o, i, b)
  std::size_t d = 2;
  acc = acc.reshape({2, 2, acc.dim(3)});
  for (std::size_t k = 1; k < n_sites(); ++k) {
    const Tensor& w = tensors[k];
    // acc (O, I, b) x w (b, o, i, r) -> (O, I, o, i, r)
    Tensor nxt = tensordot(acc, w, {2}, {0});
    nxt = nxt.permute({0, 2, 1, 3, 4});  // (O, o, I, i, r)
    d *= 2;
    acc = nxt.reshape({d, d, w.dim(3)});
  }
  acc = acc.reshape({d, d});
  return acc.to_matrix(1);
}

Mpo Mpo::identity(std::size_t n_sites) {
  Mpo op;
  op.tensors.reserve(n_sites);
  for (std::size_t k = 0; k < n_sites; ++k) {
    Tensor t({1, 2, 2, 1});
    t(0, 0, 0, 0) = 1.0;
    t(0, 1, 1, 0) = 1.0;
    op.tensors.push_back(std::move(t));
  }
  return op;
}

Mpo mpo_product(const Mpo& a, const Mpo& b) {
  require(a.n_sites() == b.n_sites(), "mpo_product: site counts differ");
  Mpo out;
  out.tensors.reserve(a.n_sites());
  for (std::size_t k = 0; k < a.n_sites(); ++k) {
    const Tensor& wa = a.tensors[k];  // (la, o, m, ra)
    const Tensor& wb = b.tensors[k];  // (lb, m, i, rb)
    Tensor w = tensordot(wa, wb, {2}, {1});  // (la, o, ra, lb, i, rb)
    w = w.permute({0, 3, 1, 4, 2, 5});       // (la, lb, o, i, ra, rb)
    out.tensors.push_back(
        w.reshape({wa.dim(0) * wb.dim(0), 2, 2, wa.dim(3) * wb.dim(3)}));
  }
  return out;
}

double expectation_mpo(const MpsState& psi, const Mpo& op) {
  require(psi.n_sites() == op.n_sites(), "expectation_mpo: site counts differ");
  // env axes: (ket bond, mpo bond, bra bond)
  Tensor env({1, 1, 1});
  env(0, 0, 0) = 1.0;
  for (std::size_t k = 0; k < psi.n_sites(); ++k) {
    const Tensor& t = psi.site_tensor(k);
    Tensor a = tensordot(env, t, {0}, {0});            // (mpo, bra, d, r_ket)
    Tensor b = tensordot(a, op.tensors[k], {0, 2}, {0, 2});  // (bra, r_ket, o, r_mpo)
    Tensor c = tensordot(b, t.conj(), {0, 2}, {0, 1}); // (r_ket, r_mpo, r_bra)
    env = std::move(c);
  }
  const cplx val = env(0, 0, 0);
  if (std::abs(val.imag()) >= 1e-8)
    throw std::runtime_error("expectation_mpo: imaginary residual exceeds 1e-8");
  return val.real();
}

}  // namespace gibbsmps
