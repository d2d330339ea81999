#pragma once

#include <random>

#include "gibbsmps/tensor.hpp"

namespace densesim {

// Haar-ish random unitary via QR of a complex Gaussian matrix.
inline gibbsmps::Matrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  gibbsmps::Matrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = gibbsmps::cplx{gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<gibbsmps::Matrix> qr(a);
  gibbsmps::Matrix q = qr.householderQ() * gibbsmps::Matrix::Identity(dim, dim);
  return q;
}

}  // namespace densesim
