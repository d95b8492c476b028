// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace peps {

namespace gates {

Matrix2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

Matrix2 hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {h, h, h, -h};
}

Matrix2 t() { return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)}; }

Matrix2 x_half() {
  const complex p{0.5, 0.5}, m{0.5, -0.5};
  return {p, m, m, p};
}

Matrix2 y_half() {
  const complex p{0.5, 0.5};
  return {p, -p, p, p};
}

Matrix2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Matrix2 pauli_y() { return {0.0, complex{0, -1}, complex{0, 1}, 0.0}; }

Matrix4 identity4() {
  Matrix4 m{};
  for (int i = 0; i < 4; ++i) m[i * 5] = 1.0;
  return m;
}

Matrix4 cz() {
  Matrix4 m = identity4();
  m[15] = -1.0;
  return m;
}

Matrix4 swap() {
  Matrix4 m{};
  m[0] = m[6] = m[9] = m[15] = 1.0;
  return m;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 m{};
  for (int ta = 0; ta < 2; ++ta)
    for (int tb = 0; tb < 2; ++tb)
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb)
          m[(ta * 2 + tb) * 4 + sa * 2 + sb] = a[ta * 2 + sa] * b[tb * 2 + sb];
  return m;
}

}  // namespace gates

double unitarity_error(std::span<const complex> matrix, std::size_t dim) {
  double err = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      complex sum{};
      for (std::size_t k = 0; k < dim; ++k)
        sum += std::conj(matrix[k * dim + i]) * matrix[k * dim + j];
      err = std::max(err, std::abs(sum - (i == j ? 1.0 : 0.0)));
    }
  return err;
}

bool is_unitary(std::span<const complex> matrix, std::size_t dim, double tol) {
  return matrix.size() == dim * dim && unitarity_error(matrix, dim) <= tol;
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) m[i * 2 + j] += a[i * 2 + k] * b[k * 2 + j];
  return m;
}

Matrix4 swap_sites(const Matrix4& gate) {
  Matrix4 m{};
  for (int ta = 0; ta < 2; ++ta)
    for (int tb = 0; tb < 2; ++tb)
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb)
          m[(tb * 2 + ta) * 4 + sb * 2 + sa] = gate[(ta * 2 + tb) * 4 + sa * 2 + sb];
  return m;
}

}  // namespace peps
