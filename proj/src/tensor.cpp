#include "gibbsmps/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gibbsmps {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<std::size_t>());
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), cplx{0.0, 0.0}) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<cplx> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  require(shape_product(shape_) == data_.size(),
          "Tensor: product(shape) must equal data length");
}

Tensor Tensor::from_matrix(const Matrix& m) {
  Tensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

cplx Tensor::at(const std::vector<std::size_t>& index) const {
  require(index.size() == rank(), "Tensor::at: index rank mismatch");
  std::size_t lin = 0;
  for (std::size_t a = 0; a < index.size(); ++a) {
    require(index[a] < shape_[a], "Tensor::at: index out of range");
    lin = lin * shape_[a] + index[a];
  }
  return data_[lin];
}

Tensor Tensor::reshape(std::vector<std::size_t> shape) const& {
  require(shape_product(shape) == data_.size(), "Tensor::reshape: size mismatch");
  return Tensor(std::move(shape), data_);
}

Tensor Tensor::reshape(std::vector<std::size_t> shape) && {
  require(shape_product(shape) == data_.size(), "Tensor::reshape: size mismatch");
  return Tensor(std::move(shape), std::move(data_));
}

Tensor Tensor::permute(const std::vector<std::size_t>& axes) const {
  require(axes.size() == rank(), "Tensor::permute: axes rank mismatch");
  const std::size_t r = rank();
  std::vector<std::size_t> new_shape(r);
  for (std::size_t k = 0; k < r; ++k) new_shape[k] = shape_[axes[k]];

  // strides of the input tensor
  std::vector<std::size_t> in_stride(r, 1);
  for (std::size_t a = r; a-- > 1;) in_stride[a - 1] = in_stride[a] * shape_[a];

  Tensor out(new_shape);
  std::vector<std::size_t> idx(r, 0);
  const std::size_t n = data_.size();
  for (std::size_t lin = 0; lin < n; ++lin) {
    // lin enumerates the output in row-major order
    std::size_t src = 0;
    for (std::size_t k = 0; k < r; ++k) src += idx[k] * in_stride[axes[k]];
    out.data_[lin] = data_[src];
    for (std::size_t k = r; k-- > 0;) {
      if (++idx[k] < new_shape[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

Tensor Tensor::conj() const {
  Tensor out(shape_, data_);
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

double Tensor::norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

bool Tensor::all_finite() const {
  for (const auto& x : data_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

Matrix Tensor::to_matrix(std::size_t row_axes) const {
  require(row_axes <= rank(), "Tensor::to_matrix: row_axes exceeds rank");
  std::size_t rows = 1, cols = 1;
  for (std::size_t a = 0; a < row_axes; ++a) rows *= shape_[a];
  for (std::size_t a = row_axes; a < rank(); ++a) cols *= shape_[a];
  // row-major data maps directly onto an Eigen row-major view
  return Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      data_.data(), rows, cols);
}

Tensor& Tensor::operator*=(cplx scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

Tensor tensordot(const Tensor& a, const Tensor& b, const std::vector<std::size_t>& axes_a,
                 const std::vector<std::size_t>& axes_b) {
  require(axes_a.size() == axes_b.size(), "tensordot: axis count mismatch");
  for (std::size_t k = 0; k < axes_a.size(); ++k)
    require(a.dim(axes_a[k]) == b.dim(axes_b[k]), "tensordot: contracted dims differ");

  auto free_axes = [](const Tensor& t, const std::vector<std::size_t>& contracted) {
    std::vector<std::size_t> free;
    for (std::size_t ax = 0; ax < t.rank(); ++ax)
      if (std::find(contracted.begin(), contracted.end(), ax) == contracted.end())
        free.push_back(ax);
    return free;
  };
  const auto free_a = free_axes(a, axes_a);
  const auto free_b = free_axes(b, axes_b);

  std::vector<std::size_t> perm_a = free_a;
  perm_a.insert(perm_a.end(), axes_a.begin(), axes_a.end());
  std::vector<std::size_t> perm_b = axes_b;
  perm_b.insert(perm_b.end(), free_b.begin(), free_b.end());

  std::size_t m = 1, k = 1, n = 1;
  std::vector<std::size_t> out_shape;
  for (auto ax : free_a) {
    m *= a.dim(ax);
    out_shape.push_back(a.dim(ax));
  }
  for (auto ax : axes_a) k *= a.dim(ax);
  for (auto ax : free_b) {
    n *= b.dim(ax);
    out_shape.push_back(b.dim(ax));
  }
  if (out_shape.empty()) out_shape.push_back(1);  // scalar result as shape (1)

  const Matrix ma = a.permute(perm_a).reshape({m, k}).to_matrix(1);
  const Matrix mb = b.permute(perm_b).reshape({k, n}).to_matrix(1);
  Matrix mc = ma * mb;

  Tensor out(out_shape);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = mc(i, j);
  return out;
}

SvdResult svd_truncated(const Tensor& matrix, std::size_t chi_max, double cutoff) {
  require(matrix.rank() == 2, "svd_truncated: expects a rank-2 tensor");
  require(chi_max >= 1, "svd_truncated: chi_max must be >= 1");
  require(cutoff >= 0.0, "svd_truncated: cutoff must be >= 0");
  if (!matrix.all_finite())
    throw std::domain_error("svd_truncated: non-finite input matrix");

  const Matrix m = matrix.to_matrix(1);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();

  double total = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) total += sv[i] * sv[i];

  std::size_t keep = 0;
  if (total > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] * sv[i] / total > cutoff) ++keep;
  }
  keep = std::min<std::size_t>(std::max<std::size_t>(keep, 1), chi_max);
  keep = std::min<std::size_t>(keep, static_cast<std::size_t>(sv.size()));

  double discarded = 0.0;
  for (Eigen::Index i = static_cast<Eigen::Index>(keep); i < sv.size(); ++i)
    discarded += sv[i] * sv[i];

  SvdResult out;
  out.s.assign(sv.data(), sv.data() + keep);
  out.u = Tensor::from_matrix(svd.matrixU().leftCols(keep));
  out.v = Tensor::from_matrix(svd.matrixV().leftCols(keep).adjoint());
  out.discarded_weight = discarded;
  return out;
}

Tensor kron(const Tensor& a, const Tensor& b) {
  require(a.rank() == 2 && b.rank() == 2, "kron: expects rank-2 tensors");
  const std::size_t ar = a.dim(0), ac = a.dim(1), br = b.dim(0), bc = b.dim(1);
  Tensor out({ar * br, ac * bc});
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t p = 0; p < br; ++p)
        for (std::size_t q = 0; q < bc; ++q)
          out(i * br + p, j * bc + q) = a(i, j) * b(p, q);
  return out;
}

}  // namespace gibbsmps
