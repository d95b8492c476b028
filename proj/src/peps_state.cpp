// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/peps_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peps/error.hpp"

namespace peps {

namespace {

std::string site_string(Site s) {
  return "(" + std::to_string(s.row) + "," + std::to_string(s.col) + ")";
}

// Keeps the leading `keep` entries of the last index of t.
DenseTensor trim_last(const DenseTensor& t, std::size_t keep) {
  const std::size_t last = t.extent(t.rank() - 1);
  if (keep == last) return t;
  Shape shape = t.shape();
  shape.back() = keep;
  DenseTensor out(shape);
  const std::size_t outer = t.size() / last;
  for (std::size_t i = 0; i < outer; ++i)
    for (std::size_t k = 0; k < keep; ++k) out.data()[i * keep + k] = t.data()[i * last + k];
  return out;
}

DenseTensor trim_first(const DenseTensor& t, std::size_t keep) {
  Shape shape = t.shape();
  shape.front() = keep;
  const std::size_t inner = t.size() / t.extent(0);
  std::vector<complex> data(t.data().begin(),
                            t.data().begin() + static_cast<std::ptrdiff_t>(keep * inner));
  return DenseTensor(shape, std::move(data));
}

}  // namespace

bool adjacent(Site a, Site b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

GateFactors factorize_two_qubit(const Matrix4& gate) {
  // [tau_a, tau_b, sigma_a, sigma_b] is exactly the row-major 4x4 layout.
  const DenseTensor op({2, 2, 2, 2}, std::vector<complex>(gate.begin(), gate.end()));
  SvdResult split = svd(op, {0, 2});

  const double cutoff = 1e-12 * split.values.front();
  std::size_t rank = 0;
  while (rank < split.values.size() && split.values[rank] > cutoff) ++rank;
  if (rank == 0) throw NumericalError("two-qubit gate is the zero operator");

  GateFactors f;
  f.rank = rank;
  f.unitary = is_unitary(gate, 4);
  f.u = trim_last(split.u, rank);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t s = 0; s < rank; ++s) f.u.data()[i * rank + s] *= split.values[s];
  f.v = trim_first(split.v, rank);
  return f;
}

std::uint64_t chi_bound(int depth) {
  if (depth < 0) throw ShapeError("depth must be non-negative");
  const int exponent = (depth + 7) / 8;
  if (exponent >= 64) throw ShapeError("bond bound overflows 64 bits");
  return std::uint64_t{1} << exponent;
}

PepsState::PepsState(int rows, int cols, std::string_view bits) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw ShapeError("lattice dimensions must be positive");
  const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (!bits.empty() && bits.size() != n)
    throw ShapeError("bitstring length " + std::to_string(bits.size()) + " != " +
                     std::to_string(n) + " qubits");
  sites_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const char b = bits.empty() ? '0' : bits[i];
    if (b != '0' && b != '1') throw ShapeError("bitstring must contain only '0'/'1'");
    DenseTensor t({2, 1, 1, 1, 1});
    t.data()[b == '1' ? 1 : 0] = 1.0;
    sites_.push_back(std::move(t));
  }
}

std::size_t PepsState::index_of(Site s) const {
  if (s.row < 0 || s.row >= rows_ || s.col < 0 || s.col >= cols_)
    throw ShapeError("site " + site_string(s) + " outside " + std::to_string(rows_) + "x" +
                     std::to_string(cols_) + " lattice");
  return static_cast<std::size_t>(s.row * cols_ + s.col);
}

std::size_t PepsState::horizontal_bond(int row, int col) const {
  return tensor({row, col}).extent(kRight);
}

std::size_t PepsState::vertical_bond(int row, int col) const {
  return tensor({row, col}).extent(kDown);
}

std::size_t PepsState::bond_dimension() const {
  std::size_t chi = 1;
  for (const auto& t : sites_)
    for (std::size_t k = kLeft; k <= kDown; ++k) chi = std::max(chi, t.extent(k));
  return chi;
}

std::size_t PepsState::element_count() const {
  std::size_t n = 0;
  for (const auto& t : sites_) n += t.size();
  return n;
}

void PepsState::apply_single_qubit(const Matrix2& gate, Site site) {
  auto data = tensor(site).data();
  const std::size_t half = data.size() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const complex a0 = data[k], a1 = data[half + k];
    data[k] = gate[0] * a0 + gate[1] * a1;
    data[half + k] = gate[2] * a0 + gate[3] * a1;
  }
}

void PepsState::apply_two_qubit(const Matrix4& gate, Site site_a, Site site_b,
                                const TensorLimits& limits) {
  DenseTensor& ta = tensor(site_a);
  DenseTensor& tb = tensor(site_b);
  if (!adjacent(site_a, site_b))
    throw ShapeError("sites " + site_string(site_a) + " and " + site_string(site_b) +
                     " are not nearest neighbours");
  if (site_b < site_a) {
    apply_two_qubit(swap_sites(gate), site_b, site_a, limits);
    return;
  }
  const GateFactors f = factorize_two_qubit(gate);
  if (ta.size() * f.rank > limits.max_elements || tb.size() * f.rank > limits.max_elements)
    throw GuardExceeded("site tensor would exceed " + std::to_string(limits.max_elements) +
                        " elements after growing bond by " + std::to_string(f.rank));

  // Both sides bundle (old bond, s) with the old bond index slowest, so the
  // two grown legs enumerate the same pairs in the same order.
  DenseTensor ua = contract(f.u, ta, {{1, kPhys}}, limits);  // [tau, s, l, r, u, d]
  DenseTensor vb = contract(f.v, tb, {{2, kPhys}}, limits);  // [s, tau, l, r, u, d]
  if (site_a.row == site_b.row) {
    ta = merge_indices(permute(ua, {0, 2, 3, 1, 4, 5}), {{0}, {1}, {2, 3}, {4}, {5}});
    tb = merge_indices(permute(vb, {1, 2, 0, 3, 4, 5}), {{0}, {1, 2}, {3}, {4}, {5}});
  } else {
    ta = merge_indices(permute(ua, {0, 2, 3, 4, 5, 1}), {{0}, {1}, {2}, {3}, {4, 5}});
    tb = merge_indices(permute(vb, {1, 2, 3, 4, 0, 5}), {{0}, {1}, {2}, {3, 4}, {5}});
  }
}

std::vector<double> PepsState::bond_spectrum(Site site, SiteIndex bond) const {
  if (bond == kPhys) throw ShapeError("bond_spectrum needs an auxiliary index");
  const DenseTensor& t = tensor(site);
  const std::size_t b = bond;
  SvdResult split = svd(t, std::span<const std::size_t>(&b, 1));
  double total = 0.0;
  for (double s : split.values) total += s * s;
  for (double& s : split.values) s = std::sqrt(s * s / total);
  split.values.resize(std::min(split.values.size(), t.extent(bond)));
  return split.values;
}

void PepsState::validate() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const DenseTensor& t = tensor({i, j});
      const Site s{i, j};
      if (t.rank() != 5 || t.extent(kPhys) != 2)
        throw ShapeError("site " + site_string(s) + " is not a [2,l,r,u,d] tensor");
      if (j == 0 && t.extent(kLeft) != 1) throw ShapeError("left boundary extent != 1");
      if (j == cols_ - 1 && t.extent(kRight) != 1) throw ShapeError("right boundary extent != 1");
      if (i == 0 && t.extent(kUp) != 1) throw ShapeError("top boundary extent != 1");
      if (i == rows_ - 1 && t.extent(kDown) != 1) throw ShapeError("bottom boundary extent != 1");
      if (j + 1 < cols_ && t.extent(kRight) != tensor({i, j + 1}).extent(kLeft))
        throw ShapeError("horizontal bond mismatch at " + site_string(s));
      if (i + 1 < rows_ && t.extent(kDown) != tensor({i + 1, j}).extent(kUp))
        throw ShapeError("vertical bond mismatch at " + site_string(s));
    }
}

}  // namespace peps
