// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>

#include "peps/tensor.hpp"

namespace peps {

/// Row-major 2x2 single-qubit gate, entry [tau][sigma].
using Matrix2 = std::array<complex, 4>;

/// Row-major 4x4 two-qubit gate. Row tau_a*2+tau_b, column sigma_a*2+sigma_b,
/// where a is the first site the gate is applied to.
using Matrix4 = std::array<complex, 16>;

namespace gates {

Matrix2 identity2();
Matrix2 hadamard();
Matrix2 t();
/// Principal square root of Pauli X: (1/2)[[1+i, 1-i], [1-i, 1+i]].
Matrix2 x_half();
/// Principal square root of Pauli Y: (1/2)[[1+i, -1-i], [1+i, 1+i]].
Matrix2 y_half();
Matrix2 pauli_x();
Matrix2 pauli_y();

Matrix4 identity4();
Matrix4 cz();
Matrix4 swap();
/// Kronecker product, first factor acting on site a.
Matrix4 kron(const Matrix2& a, const Matrix2& b);

}  // namespace gates

/// Max-abs deviation of G^dagger G from identity.
double unitarity_error(std::span<const complex> matrix, std::size_t dim);
bool is_unitary(std::span<const complex> matrix, std::size_t dim, double tol = 1e-12);

Matrix2 multiply(const Matrix2& a, const Matrix2& b);

/// The same operator with the roles of the two sites exchanged.
Matrix4 swap_sites(const Matrix4& gate);

}  // namespace peps
