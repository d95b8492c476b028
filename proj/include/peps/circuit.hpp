// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "peps/gates.hpp"
#include "peps/peps_state.hpp"

namespace peps {

enum class GateKind { H, T, XHalf, YHalf, CZ, Custom1, Custom2 };

struct Gate {
  GateKind kind = GateKind::H;
  Site a;
  Site b;          ///< second site, two-qubit gates only
  Matrix2 m1{};    ///< Custom1 only
  Matrix4 m2{};    ///< Custom2 only

  static Gate single(GateKind kind, Site a) { return {kind, a, {}, {}, {}}; }
  static Gate cz(Site a, Site b) { return {GateKind::CZ, a, b, {}, {}}; }
  static Gate custom(const Matrix2& m, Site a) { return {GateKind::Custom1, a, {}, m, {}}; }
  static Gate custom(const Matrix4& m, Site a, Site b) {
    return {GateKind::Custom2, a, b, {}, m};
  }

  bool two_qubit() const noexcept { return kind == GateKind::CZ || kind == GateKind::Custom2; }
  Matrix2 matrix1() const;
  Matrix4 matrix2() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Gates on pairwise disjoint sites.
struct Layer {
  std::vector<Gate> gates;
  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Layered circuit on an L_v x L_h lattice. Generated circuits are
/// (1 + d + 1) deep: an all-H layer, d clock cycles, an all-H layer.
struct Circuit {
  int rows = 1;
  int cols = 1;
  std::vector<Layer> layers;
  std::optional<std::uint64_t> seed;
  std::string generator;

  int num_qubits() const noexcept { return rows * cols; }
  /// Clock cycles between the two Hadamard layers.
  int depth() const noexcept { return layers.size() >= 2 ? static_cast<int>(layers.size()) - 2 : 0; }

  /// Throws ShapeError on out-of-range sites, repeated sites in a layer,
  /// non-adjacent two-qubit gates, or non-unitary custom matrices.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// CZ pairs of clock cycle `t`, configuration t mod 8. Horizontal bond
/// (i,j)-(i,j+1) has class 2*(j%2) + i%2, vertical bond (i,j)-(i+1,j) has
/// class 2*(i%2) + j%2; configuration 2k is horizontal class k and 2k+1 is
/// vertical class k.
std::vector<std::pair<Site, Site>> cz_layout(int rows, int cols, int t);

/// Random circuit of depth (1 + depth + 1). Cycle t (1-based) applies the
/// CZs of cz_layout(t-1). A qubit that had a CZ in cycle t-1 and none in
/// cycle t gets a single-qubit gate: T if it has had none yet, otherwise one
/// of {T, X^1/2, Y^1/2} other than its previous one, drawn from the qubit's
/// own stream (make_stream(seed, qubit)).
Circuit generate_rqc(int rows, int cols, int depth, std::uint64_t seed);

std::string serialize_circuit(const Circuit& circuit);
Circuit parse_circuit(std::string_view text);

/// Bond dimension `evolve(circuit)` will reach, from the gates'
/// operator-Schmidt ranks alone; no tensors are built.
std::size_t predicted_bond_dimension(const Circuit& circuit);

/// Applies every layer of `circuit` to `state`.
void apply_circuit(PepsState& state, const Circuit& circuit, const TensorLimits& limits = {});

/// |0...0> evolved through `circuit`.
PepsState evolve(const Circuit& circuit, const TensorLimits& limits = {});

}  // namespace peps
