// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "peps/error.hpp"

namespace peps {

std::uint64_t basis_index(std::string_view tau) {
  if (tau.size() > 63) throw ShapeError("bitstring too long for a basis index");
  std::uint64_t index = 0;
  for (char c : tau) {
    if (c != '0' && c != '1') throw ShapeError("bitstring must contain only '0'/'1'");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return index;
}

std::string basis_string(std::uint64_t index, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int p = num_qubits - 1; p >= 0; --p, index >>= 1)
    if (index & 1) s[static_cast<std::size_t>(p)] = '1';
  return s;
}

StateVector::StateVector(int num_qubits, int max_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw ShapeError("state vector needs at least one qubit");
  if (num_qubits > max_qubits)
    throw ShapeError("state vector limited to " + std::to_string(max_qubits) + " qubits, got " +
                     std::to_string(num_qubits));
  amplitudes_.assign(std::size_t{1} << num_qubits, complex{});
  amplitudes_[0] = 1.0;
}

complex StateVector::amplitude(std::string_view tau) const {
  if (tau.size() != static_cast<std::size_t>(num_qubits_))
    throw ShapeError("bitstring length does not match qubit count");
  return amplitudes_[basis_index(tau)];
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::apply_single(const Matrix2& gate, int qubit) {
  const std::uint64_t m = mask(qubit);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & m) continue;
    const complex a0 = amplitudes_[i], a1 = amplitudes_[i | m];
    amplitudes_[i] = gate[0] * a0 + gate[1] * a1;
    amplitudes_[i | m] = gate[2] * a0 + gate[3] * a1;
  }
}

void StateVector::apply_two(const Matrix4& gate, int qa, int qb) {
  if (qa == qb) throw ShapeError("two-qubit gate on a single qubit");
  const std::uint64_t ma = mask(qa), mb = mask(qb);
  const std::uint64_t offsets[4] = {0, mb, ma, ma | mb};
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & (ma | mb)) continue;
    complex in[4], out[4] = {};
    for (int k = 0; k < 4; ++k) in[k] = amplitudes_[i | offsets[k]];
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 4; ++k) out[r] += gate[static_cast<std::size_t>(r * 4 + k)] * in[k];
    for (int k = 0; k < 4; ++k) amplitudes_[i | offsets[k]] = out[k];
  }
}

double amplitude_deviation(complex got, complex want, int num_qubits) {
  const double floor = std::exp2(-0.5 * num_qubits);
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

StateVector simulate_statevector(const Circuit& circuit, int max_qubits) {
  StateVector sv(circuit.num_qubits(), max_qubits);
  auto q = [&](Site s) { return s.row * circuit.cols + s.col; };
  for (const Layer& layer : circuit.layers)
    for (const Gate& g : layer.gates) {
      if (g.two_qubit())
        sv.apply_two(g.matrix2(), q(g.a), q(g.b));
      else
        sv.apply_single(g.matrix1(), q(g.a));
    }
  return sv;
}

}  // namespace peps
