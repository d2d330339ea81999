#pragma once

// Test-only dense statevector machinery, kept independent of the MPS code
// paths it is used to check.

#include <cmath>
#include <string>
#include <vector>

#include "gibbsmps/circuit.hpp"
#include "gibbsmps/tensor.hpp"

namespace densesim {

using gibbsmps::cplx;
using gibbsmps::Matrix;
using gibbsmps::Vector;

// Site 0 is the most significant bit, matching MpsState::to_statevector.
inline Vector from_bits(const std::string& bits) {
  const std::size_t n = bits.size();
  Vector psi = Vector::Zero(std::size_t{1} << n);
  std::size_t idx = 0;
  for (char c : bits) idx = (idx << 1) | (c == '1' ? 1 : 0);
  psi[idx] = 1.0;
  return psi;
}

inline void apply_gate(Vector& psi, const Matrix& g, const std::vector<std::size_t>& sites,
                       std::size_t n) {
  const std::size_t dim = psi.size();
  if (sites.size() == 1) {
    const std::size_t bit = n - 1 - sites[0];
    const std::size_t mask = std::size_t{1} << bit;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const cplx a0 = psi[i], a1 = psi[i | mask];
      psi[i] = g(0, 0) * a0 + g(0, 1) * a1;
      psi[i | mask] = g(1, 0) * a0 + g(1, 1) * a1;
    }
    return;
  }
  const std::size_t b0 = n - 1 - sites[0];
  const std::size_t b1 = n - 1 - sites[1];
  const std::size_t m0 = std::size_t{1} << b0;
  const std::size_t m1 = std::size_t{1} << b1;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & m0) || (i & m1)) continue;
    std::size_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};  // (s0 s1) = 00,01,10,11
    cplx a[4];
    for (int k = 0; k < 4; ++k) a[k] = psi[idx[k]];
    for (int r = 0; r < 4; ++r) {
      cplx v = 0.0;
      for (int k = 0; k < 4; ++k) v += g(r, k) * a[k];
      psi[idx[r]] = v;
    }
  }
}

inline Vector run_circuit(const std::vector<gibbsmps::BoundGate>& gates, std::size_t n) {
  Vector psi = from_bits(std::string(n, '0'));
  for (const auto& g : gates) apply_gate(psi, g.matrix.to_matrix(1), g.sites, n);
  return psi;
}

inline Matrix circuit_unitary(const std::vector<gibbsmps::BoundGate>& gates, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    Vector psi = Vector::Zero(dim);
    psi[col] = 1.0;
    for (const auto& g : gates) apply_gate(psi, g.matrix.to_matrix(1), g.sites, n);
    u.col(col) = psi;
  }
  return u;
}

// Density matrix of the first `keep` sites.
inline Matrix partial_trace_suffix(const Vector& psi, std::size_t keep) {
  const std::size_t dl = std::size_t{1} << keep;
  const std::size_t dr = psi.size() / dl;
  Matrix rho = Matrix::Zero(dl, dl);
  for (std::size_t a = 0; a < dl; ++a)
    for (std::size_t b = 0; b < dl; ++b) {
      cplx acc = 0.0;
      for (std::size_t r = 0; r < dr; ++r) acc += psi[a * dr + r] * std::conj(psi[b * dr + r]);
      rho(a, b) = acc;
    }
  return rho;
}

inline double vn_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

}  // namespace densesim
