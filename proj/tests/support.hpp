// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

// Helpers shared by the test binaries. Reference computations here avoid the
// library's tensor kernels.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "peps/circuit.hpp"
#include "peps/contraction.hpp"
#include "peps/gates.hpp"
#include "peps/oracle.hpp"
#include "peps/peps_state.hpp"
#include "peps/tensor.hpp"

namespace testing {

using peps::complex;

inline complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

inline peps::DenseTensor random_tensor(const peps::Shape& shape, std::mt19937_64& rng) {
  peps::DenseTensor t(shape);
  for (auto& x : t.data()) x = random_complex(rng);
  return t;
}

/// Haar-ish random unitary by Gram-Schmidt on Gaussian columns; row-major.
inline std::vector<complex> random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::vector<complex> m(dim * dim);
  for (auto& x : m) x = random_complex(rng);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      complex dot{};
      for (std::size_t r = 0; r < dim; ++r) dot += std::conj(m[r * dim + p]) * m[r * dim + c];
      for (std::size_t r = 0; r < dim; ++r) m[r * dim + c] -= dot * m[r * dim + p];
    }
    double n = 0;
    for (std::size_t r = 0; r < dim; ++r) n += std::norm(m[r * dim + c]);
    n = std::sqrt(n);
    for (std::size_t r = 0; r < dim; ++r) m[r * dim + c] /= n;
  }
  return m;
}

inline peps::Matrix2 random_unitary2(std::mt19937_64& rng) {
  auto v = random_unitary(2, rng);
  peps::Matrix2 m;
  std::copy(v.begin(), v.end(), m.begin());
  return m;
}

inline peps::Matrix4 random_unitary4(std::mt19937_64& rng) {
  auto v = random_unitary(4, rng);
  peps::Matrix4 m;
  std::copy(v.begin(), v.end(), m.begin());
  return m;
}

inline std::string random_bits(int n, std::mt19937_64& rng) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (auto& c : s) c = (rng() & 1) ? '1' : '0';
  return s;
}

/// Every amplitude of a PEPS, by enumerating basis strings.
inline std::vector<complex> peps_vector(const peps::PepsState& state) {
  const int n = state.num_qubits();
  std::vector<complex> out(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < out.size(); ++i)
    out[i] = peps::amplitude(state, peps::basis_string(i, n));
  return out;
}

inline double max_abs_diff(std::span<const complex> a, std::span<const complex> b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double relative(complex got, complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testing
