// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

#include "peps/gates.hpp"
#include "peps/tensor.hpp"

namespace peps {

/// Lattice coordinate, 0-based.
struct Site {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Site&, const Site&) = default;
};

bool adjacent(Site a, Site b);

/// Index positions of a site tensor.
enum SiteIndex : std::size_t { kPhys = 0, kLeft = 1, kRight = 2, kUp = 3, kDown = 4 };

/// Operator-Schmidt factorization of a two-qubit gate.
struct GateFactors {
  DenseTensor u;           ///< [tau_a, sigma_a, s], singular values absorbed
  DenseTensor v;           ///< [s, tau_b, sigma_b]
  std::size_t rank = 0;    ///< extent of s
  bool unitary = true;     ///< false if the input failed the 1e-12 unitarity check
};

/// Splits a gate into two local tensors, dropping singular values at or
/// below 1e-12 of the largest.
GateFactors factorize_two_qubit(const Matrix4& gate);

/// 2^ceil(depth/8): largest bond dimension a depth-`depth` random circuit
/// can produce.
std::uint64_t chi_bound(int depth);

/// PEPS wavefunction on an L_v x L_h open lattice. Each site holds a rank-5
/// tensor [sigma, l, r, u, d]; auxiliary extents on the lattice boundary are 1.
///
/// Gates mutate the state in place. Bonds only ever grow: no truncation.
class PepsState {
 public:
  /// Product state |bits>; `bits` is row-major '0'/'1', empty means all zero.
  PepsState(int rows, int cols, std::string_view bits = {});

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int num_qubits() const noexcept { return rows_ * cols_; }

  const DenseTensor& tensor(Site s) const { return sites_[index_of(s)]; }
  DenseTensor& tensor(Site s) { return sites_[index_of(s)]; }

  /// Extent of the bond (row, col)-(row, col+1).
  std::size_t horizontal_bond(int row, int col) const;
  /// Extent of the bond (row, col)-(row+1, col).
  std::size_t vertical_bond(int row, int col) const;

  /// Maximum auxiliary extent over all sites.
  std::size_t bond_dimension() const;

  /// Total number of stored complex elements.
  std::size_t element_count() const;

  void apply_single_qubit(const Matrix2& gate, Site site);

  /// Applies `gate` with site_a as its first qubit. The shared bond grows by
  /// the gate's operator-Schmidt rank; throws GuardExceeded if a grown site
  /// tensor would exceed `limits`.
  void apply_two_qubit(const Matrix4& gate, Site site_a, Site site_b,
                       const TensorLimits& limits = {});

  /// Normalized singular values of the site tensor split across one of its
  /// bonds. Diagnostic only.
  std::vector<double> bond_spectrum(Site site, SiteIndex bond) const;

  /// Throws ShapeError if any shape or bond-consistency invariant fails.
  void validate() const;

 private:
  std::size_t index_of(Site s) const;

  int rows_;
  int cols_;
  std::vector<DenseTensor> sites_;
};

}  // namespace peps
