// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/tensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "peps/error.hpp"

namespace peps {

namespace {

using RowMatrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;
using MatrixMap = Eigen::Map<RowMatrix>;

std::string shape_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

Shape strides_of(const Shape& shape) {
  Shape strides(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) strides[i - 1] = strides[i] * shape[i];
  return strides;
}

bool is_identity(std::span<const std::size_t> order) {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != i) return false;
  return true;
}

void check_permutation(std::span<const std::size_t> order, std::size_t rank) {
  if (order.size() != rank)
    throw ShapeError("permutation length " + std::to_string(order.size()) +
                     " does not match rank " + std::to_string(rank));
  std::vector<bool> seen(rank, false);
  for (auto p : order) {
    if (p >= rank || seen[p]) throw ShapeError("invalid permutation");
    seen[p] = true;
  }
}

// Element count with saturation so that the guard check cannot overflow.
std::size_t saturating_count(std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (auto e : shape) {
    if (e != 0 && n > std::numeric_limits<std::size_t>::max() / e)
      return std::numeric_limits<std::size_t>::max();
    n *= e;
  }
  return n;
}

}  // namespace

DenseTensor::DenseTensor(Shape shape) : shape_(std::move(shape)) {
  for (auto e : shape_)
    if (e == 0) throw ShapeError("zero extent in shape " + shape_string(shape_));
  data_.assign(element_count(shape_), complex{});
}

DenseTensor::DenseTensor(Shape shape, std::vector<complex> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  for (auto e : shape_)
    if (e == 0) throw ShapeError("zero extent in shape " + shape_string(shape_));
  if (element_count(shape_) != data_.size())
    throw ShapeError("shape " + shape_string(shape_) + " does not hold " +
                     std::to_string(data_.size()) + " elements");
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw ShapeError("index rank mismatch");
  std::size_t off = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= shape_[i]) throw ShapeError("index out of range");
    off = off * shape_[i] + index[i];
  }
  return off;
}

DenseTensor DenseTensor::reshaped(Shape shape) const& {
  DenseTensor copy = *this;
  return std::move(copy).reshaped(std::move(shape));
}

DenseTensor DenseTensor::reshaped(Shape shape) && {
  return DenseTensor(std::move(shape), std::move(data_));
}

DenseTensor& DenseTensor::operator*=(complex factor) {
  for (auto& x : data_) x *= factor;
  return *this;
}

DenseTensor DenseTensor::conj() const {
  DenseTensor out = *this;
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

double DenseTensor::norm() const {
  double sum = 0.0;
  for (const auto& x : data_) sum += std::norm(x);
  return std::sqrt(sum);
}

DenseTensor operator*(complex factor, DenseTensor t) {
  t *= factor;
  return t;
}

std::size_t element_count(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

DenseTensor permute(const DenseTensor& t, std::span<const std::size_t> order) {
  const std::size_t rank = t.rank();
  check_permutation(order, rank);
  if (is_identity(order)) return t;

  const Shape src_strides = strides_of(t.shape());
  Shape out_shape(rank);
  Shape stride(rank);  // source stride of each output index
  for (std::size_t k = 0; k < rank; ++k) {
    out_shape[k] = t.extent(order[k]);
    stride[k] = src_strides[order[k]];
  }
  DenseTensor out(out_shape);
  auto dst = out.data();
  auto src = t.data();

  // Odometer over all output indices but the last; the innermost run walks
  // the source with a constant stride.
  const std::size_t inner = out_shape[rank - 1];
  const std::size_t inner_stride = stride[rank - 1];
  std::vector<std::size_t> counter(rank, 0);
  std::size_t src_off = 0;
  for (std::size_t base = 0; base < dst.size(); base += inner) {
    for (std::size_t i = 0; i < inner; ++i) dst[base + i] = src[src_off + i * inner_stride];
    for (std::size_t k = rank - 1; k-- > 0;) {
      if (++counter[k] < out_shape[k]) {
        src_off += stride[k];
        break;
      }
      src_off -= (out_shape[k] - 1) * stride[k];
      counter[k] = 0;
    }
  }
  return out;
}

DenseTensor permute(const DenseTensor& t, std::initializer_list<std::size_t> order) {
  return permute(t, std::span<const std::size_t>(order.begin(), order.size()));
}

DenseTensor merge_indices(const DenseTensor& t,
                          const std::vector<std::vector<std::size_t>>& groups) {
  std::size_t next = 0;
  Shape shape;
  shape.reserve(groups.size());
  for (const auto& group : groups) {
    if (group.empty()) throw ShapeError("empty index group");
    std::size_t extent = 1;
    for (auto p : group) {
      if (p != next)
        throw ShapeError("index groups must partition 0..rank-1 in ascending order");
      extent *= t.extent(p);
      ++next;
    }
    shape.push_back(extent);
  }
  if (next != t.rank()) throw ShapeError("index groups do not cover every index");
  return t.reshaped(std::move(shape));
}

DenseTensor split_index(const DenseTensor& t, std::size_t index, const Shape& extents) {
  if (index >= t.rank()) throw ShapeError("split index out of range");
  if (element_count(extents) != t.extent(index))
    throw ShapeError("split extents do not multiply to " + std::to_string(t.extent(index)));
  Shape shape(t.shape().begin(), t.shape().begin() + static_cast<std::ptrdiff_t>(index));
  shape.insert(shape.end(), extents.begin(), extents.end());
  shape.insert(shape.end(), t.shape().begin() + static_cast<std::ptrdiff_t>(index) + 1,
               t.shape().end());
  return t.reshaped(std::move(shape));
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::span<const IndexPair> pairs, const TensorLimits& limits) {
  std::vector<bool> a_paired(a.rank(), false), b_paired(b.rank(), false);
  for (auto [ia, ib] : pairs) {
    if (ia >= a.rank() || ib >= b.rank()) throw ShapeError("contraction index out of range");
    if (a_paired[ia] || b_paired[ib]) throw ShapeError("index paired twice");
    if (a.extent(ia) != b.extent(ib))
      throw ShapeError("extent mismatch on pair (" + std::to_string(ia) + "," +
                       std::to_string(ib) + "): " + std::to_string(a.extent(ia)) +
                       " vs " + std::to_string(b.extent(ib)));
    a_paired[ia] = b_paired[ib] = true;
  }

  // a -> [free..., paired...], b -> [paired..., free...], then one matmul.
  std::vector<std::size_t> a_order, b_order;
  Shape out_shape;
  std::size_t rows = 1, cols = 1, inner = 1;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!a_paired[i]) {
      a_order.push_back(i);
      out_shape.push_back(a.extent(i));
      rows *= a.extent(i);
    }
  for (auto [ia, ib] : pairs) {
    a_order.push_back(ia);
    b_order.push_back(ib);
    inner *= a.extent(ia);
  }
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!b_paired[i]) {
      b_order.push_back(i);
      out_shape.push_back(b.extent(i));
      cols *= b.extent(i);
    }

  const std::size_t out_count = saturating_count(out_shape);
  if (out_count > limits.max_elements)
    throw GuardExceeded("contraction output " + shape_string(out_shape) + " exceeds " +
                        std::to_string(limits.max_elements) + " elements");

  std::optional<DenseTensor> a_perm, b_perm;
  if (!is_identity(a_order)) a_perm = permute(a, a_order);
  if (!is_identity(b_order)) b_perm = permute(b, b_order);
  const DenseTensor& ap = a_perm ? *a_perm : a;
  const DenseTensor& bp = b_perm ? *b_perm : b;

  DenseTensor out(out_shape);
  ConstMatrixMap am(ap.data().data(), static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(inner));
  ConstMatrixMap bm(bp.data().data(), static_cast<Eigen::Index>(inner),
                    static_cast<Eigen::Index>(cols));
  MatrixMap cm(out.data().data(), static_cast<Eigen::Index>(rows),
               static_cast<Eigen::Index>(cols));
  cm.noalias() = am * bm;
  return out;
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::initializer_list<IndexPair> pairs, const TensorLimits& limits) {
  return contract(a, b, std::span<const IndexPair>(pairs.begin(), pairs.size()), limits);
}

SvdResult svd(const DenseTensor& t, std::span<const std::size_t> row_indices) {
  const std::size_t rank = t.rank();
  if (row_indices.empty() || row_indices.size() >= rank)
    throw ShapeError("svd row indices must be a nonempty proper subset");
  std::vector<bool> is_row(rank, false);
  std::vector<std::size_t> order(row_indices.begin(), row_indices.end());
  for (auto p : row_indices) {
    if (p >= rank || is_row[p]) throw ShapeError("invalid svd row indices");
    is_row[p] = true;
  }
  Shape row_shape, col_shape;
  for (auto p : row_indices) row_shape.push_back(t.extent(p));
  for (std::size_t i = 0; i < rank; ++i)
    if (!is_row[i]) {
      order.push_back(i);
      col_shape.push_back(t.extent(i));
    }
  for (const auto& x : t.data())
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw NumericalError("svd input contains non-finite values");

  const DenseTensor m = permute(t, order);
  const auto rows = static_cast<Eigen::Index>(element_count(row_shape));
  const auto cols = static_cast<Eigen::Index>(element_count(col_shape));
  const RowMatrix matrix = ConstMatrixMap(m.data().data(), rows, cols);

  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) throw NumericalError("svd did not converge");

  const Eigen::Index k = std::min(rows, cols);
  SvdResult out;
  out.values.resize(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) out.values[static_cast<std::size_t>(i)] = solver.singularValues()(i);

  Shape u_shape = row_shape;
  u_shape.push_back(static_cast<std::size_t>(k));
  out.u = DenseTensor(u_shape);
  MatrixMap(out.u.data().data(), rows, k) = solver.matrixU();

  Shape v_shape{static_cast<std::size_t>(k)};
  v_shape.insert(v_shape.end(), col_shape.begin(), col_shape.end());
  out.v = DenseTensor(v_shape);
  MatrixMap(out.v.data().data(), k, cols) = solver.matrixV().adjoint();
  return out;
}

SvdResult svd(const DenseTensor& t, std::initializer_list<std::size_t> row_indices) {
  return svd(t, std::span<const std::size_t>(row_indices.begin(), row_indices.size()));
}

std::string IndexLabel::to_string() const {
  const char* tag = kind == Kind::Physical ? "s" : kind == Kind::Horizontal ? "h" : "v";
  return std::string(tag) + "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

void LabeledTensor::validate() const {
  if (labels.size() != tensor.rank())
    throw ShapeError("label count does not match tensor rank");
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ShapeError("repeated index label on one tensor");
}

LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b,
                       const TensorLimits& limits) {
  std::vector<IndexPair> pairs;
  std::vector<bool> b_paired(b.labels.size(), false);
  LabeledTensor out;
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    auto it = std::find(b.labels.begin(), b.labels.end(), a.labels[i]);
    if (it == b.labels.end()) {
      out.labels.push_back(a.labels[i]);
    } else {
      const auto j = static_cast<std::size_t>(it - b.labels.begin());
      pairs.emplace_back(i, j);
      b_paired[j] = true;
    }
  }
  for (std::size_t j = 0; j < b.labels.size(); ++j)
    if (!b_paired[j]) out.labels.push_back(b.labels[j]);
  out.tensor = contract(a.tensor, b.tensor, pairs, limits);
  return out;
}

}  // namespace peps
