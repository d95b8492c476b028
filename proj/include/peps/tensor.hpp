// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace peps {

using complex = std::complex<double>;
using Shape = std::vector<std::size_t>;

/// Dense complex tensor, row-major with the leftmost index slowest.
///
/// A rank-0 tensor is a scalar holding exactly one element. Extents are
/// always >= 1.
class DenseTensor {
 public:
  DenseTensor() : data_(1) {}
  explicit DenseTensor(Shape shape);
  DenseTensor(Shape shape, std::vector<complex> data);

  static DenseTensor scalar(complex value) { return DenseTensor({}, {value}); }

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t extent(std::size_t index) const { return shape_.at(index); }

  std::span<complex> data() noexcept { return data_; }
  std::span<const complex> data() const noexcept { return data_; }

  /// Flat offset of a full multi-index; throws ShapeError when out of range.
  std::size_t offset(std::span<const std::size_t> index) const;
  complex& at(std::span<const std::size_t> index) { return data_[offset(index)]; }
  complex at(std::span<const std::size_t> index) const { return data_[offset(index)]; }
  complex& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  complex at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  /// Reinterprets the data under a new shape with the same element count.
  DenseTensor reshaped(Shape shape) const&;
  DenseTensor reshaped(Shape shape) &&;

  DenseTensor& operator*=(complex factor);
  DenseTensor conj() const;

  /// Frobenius norm.
  double norm() const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  Shape shape_;
  std::vector<complex> data_;
};

DenseTensor operator*(complex factor, DenseTensor t);

/// Number of elements a tensor of `shape` holds.
std::size_t element_count(std::span<const std::size_t> shape);

/// Guards against runaway intermediate sizes.
struct TensorLimits {
  /// Largest permitted contraction output, in elements (2^30 = 16 GiB).
  std::size_t max_elements = std::size_t{1} << 30;
};

/// Output index k of the result is input index order[k].
DenseTensor permute(const DenseTensor& t, std::span<const std::size_t> order);
DenseTensor permute(const DenseTensor& t, std::initializer_list<std::size_t> order);

/// Pure reshape that fuses consecutive index runs. `groups` must list
/// 0..rank-1 exactly once, ascending and contiguous within each group and
/// across groups (permute first otherwise).
DenseTensor merge_indices(const DenseTensor& t,
                          const std::vector<std::vector<std::size_t>>& groups);

/// Inverse of merge_indices for a single index.
DenseTensor split_index(const DenseTensor& t, std::size_t index, const Shape& extents);

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Sums over every (index-of-a, index-of-b) pair. The result carries a's
/// unpaired indices in order, then b's unpaired indices in order.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::span<const IndexPair> pairs,
                     const TensorLimits& limits = {});
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::initializer_list<IndexPair> pairs,
                     const TensorLimits& limits = {});

struct SvdResult {
  DenseTensor u;               ///< [row indices..., k]
  std::vector<double> values;  ///< descending, length k
  DenseTensor v;               ///< [k, remaining indices...]
};

/// Thin SVD of the matricization (row_indices x remaining indices, the
/// latter in ascending order). t == u . diag(values) . v.
SvdResult svd(const DenseTensor& t, std::span<const std::size_t> row_indices);
SvdResult svd(const DenseTensor& t, std::initializer_list<std::size_t> row_indices);

/// Names one leg of a lattice tensor network.
struct IndexLabel {
  enum class Kind : std::uint8_t {
    Physical,    ///< sigma at (row, col)
    Horizontal,  ///< bond (row, col)-(row, col+1)
    Vertical,    ///< bond (row, col)-(row+1, col)
  };
  Kind kind = Kind::Physical;
  int row = 0;
  int col = 0;

  static IndexLabel physical(int r, int c) { return {Kind::Physical, r, c}; }
  static IndexLabel horizontal(int r, int c) { return {Kind::Horizontal, r, c}; }
  static IndexLabel vertical(int r, int c) { return {Kind::Vertical, r, c}; }

  friend auto operator<=>(const IndexLabel&, const IndexLabel&) = default;
  std::string to_string() const;
};

/// A tensor whose indices carry labels; indices sharing a label between
/// two tensors are summed when they are contracted.
struct LabeledTensor {
  DenseTensor tensor;
  std::vector<IndexLabel> labels;

  /// Throws ShapeError on rank/label mismatch or repeated labels.
  void validate() const;
};

/// Contracts every label the two operands share.
LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b,
                       const TensorLimits& limits = {});

}  // namespace peps
