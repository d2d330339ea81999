#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gibbsmps {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense multi-dimensional complex array.
///
/// Data is stored in row-major order: the last index varies fastest, so a
/// tensor of shape (d0, d1, d2) stores element (i, j, k) at linear offset
/// (i*d1 + j)*d2 + k. All reshape/permute semantics are defined against this
/// layout.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape);
  Tensor(std::vector<std::size_t> shape, std::vector<cplx> data);

  static Tensor zeros(std::vector<std::size_t> shape) { return Tensor(std::move(shape)); }
  /// Wraps an Eigen matrix as a rank-2 tensor (rows, cols).
  static Tensor from_matrix(const Matrix& m);

  std::size_t rank() const { return shape_.size(); }
  std::size_t numel() const { return data_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  cplx& operator[](std::size_t linear) { return data_[linear]; }
  const cplx& operator[](std::size_t linear) const { return data_[linear]; }

  cplx& operator()(std::size_t i) { return data_[i]; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  cplx& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  cplx& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
  }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * shape_[1] + j];
  }
  const cplx& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  const cplx& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
  }

  cplx at(const std::vector<std::size_t>& index) const;

  /// Reinterprets the same row-major data under a new shape of equal size.
  Tensor reshape(std::vector<std::size_t> shape) const&;
  Tensor reshape(std::vector<std::size_t> shape) &&;

  /// Returns the tensor with axes reordered; axes[k] names the input axis
  /// that becomes output axis k.
  Tensor permute(const std::vector<std::size_t>& axes) const;

  Tensor conj() const;
  double norm() const;
  bool all_finite() const;

  /// Matricizes by grouping the first `row_axes` axes as rows and the rest
  /// as columns.
  Matrix to_matrix(std::size_t row_axes) const;

  Tensor& operator*=(cplx scale);

 private:
  std::vector<std::size_t> shape_;
  std::vector<cplx> data_;
};

/// Contracts `axes_a` of A with `axes_b` of B (pairwise, matching dims).
/// Result axes: uncontracted axes of A in order, then uncontracted of B.
Tensor tensordot(const Tensor& a, const Tensor& b, const std::vector<std::size_t>& axes_a,
                 const std::vector<std::size_t>& axes_b);

struct SvdResult {
  Tensor u;                ///< (rows, k) isometry, U†U = I
  std::vector<double> s;   ///< k singular values, descending
  Tensor v;                ///< (k, cols) with V V† = I; input ≈ U diag(S) V
  double discarded_weight; ///< sum of squared discarded singular values
};

/// Truncated SVD of a rank-2 tensor. Keeps
///   min(chi_max, #{ i : s_i^2 / sum_j s_j^2 > cutoff })
/// singular values (at least one), descending. Ties keep input order.
SvdResult svd_truncated(const Tensor& matrix, std::size_t chi_max, double cutoff);

Tensor kron(const Tensor& a, const Tensor& b);

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace gibbsmps
