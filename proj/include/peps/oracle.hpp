// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peps/circuit.hpp"
#include "peps/gates.hpp"

namespace peps {

inline constexpr int kDefaultOracleQubits = 24;

/// Basis index of a row-major bitstring; the first character is the most
/// significant bit.
std::uint64_t basis_index(std::string_view tau);
std::string basis_string(std::uint64_t index, int num_qubits);

/// Brute-force 2^N amplitude vector. Gates act by direct index arithmetic
/// and share nothing with the tensor code.
class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits; throws ShapeError above `max_qubits`.
  explicit StateVector(int num_qubits, int max_qubits = kDefaultOracleQubits);

  int num_qubits() const noexcept { return num_qubits_; }
  std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
  complex amplitude(std::string_view tau) const;
  double norm() const;

  /// `qubit` is the bitstring position (row-major site index).
  void apply_single(const Matrix2& gate, int qubit);
  /// Gate rows/columns are indexed (bit of qa)*2 + (bit of qb).
  void apply_two(const Matrix4& gate, int qa, int qb);

 private:
  std::uint64_t mask(int qubit) const { return std::uint64_t{1} << (num_qubits_ - 1 - qubit); }

  int num_qubits_;
  std::vector<complex> amplitudes_;
};

/// |got - want| / max(|want|, 2^(-N/2)).
double amplitude_deviation(complex got, complex want, int num_qubits);

StateVector simulate_statevector(const Circuit& circuit, int max_qubits = kDefaultOracleQubits);

}  // namespace peps
