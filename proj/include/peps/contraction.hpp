// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peps/cost_model.hpp"
#include "peps/peps_state.hpp"
#include "peps/tensor.hpp"

namespace peps {

/// Index positions of a projected (rank-4) tensor.
enum NetIndex : std::size_t { kNetLeft = 0, kNetRight = 1, kNetUp = 2, kNetDown = 3 };

/// Grid of rank-4 tensors [l, r, u, d] with no open legs; contracting it
/// gives one number.
struct ProjectedNetwork {
  int rows = 1;
  int cols = 1;
  std::vector<DenseTensor> tensors;  ///< row-major

  const DenseTensor& at(int r, int c) const { return tensors[static_cast<std::size_t>(r * cols + c)]; }
  DenseTensor& at(int r, int c) { return tensors[static_cast<std::size_t>(r * cols + c)]; }

  /// Largest bond extent.
  std::size_t bond_dimension() const;
  void validate() const;
};

/// Slices every site tensor at sigma = tau. `tau` is a row-major bitstring.
ProjectedNetwork project(const PepsState& state, std::string_view tau);

/// Instrumentation filled by the contraction routines.
struct ContractionStats {
  std::size_t peak_elements = 0;  ///< largest intermediate tensor
  std::size_t contractions = 0;   ///< pairwise contractions performed
};

struct ContractOptions {
  std::uint64_t budget_bytes = kDefaultBudgetBytes;
  /// Shared accounting across concurrent contractions; optional.
  MemoryBudget* shared_budget = nullptr;
  TensorLimits limits;
  ContractionStats* stats = nullptr;
  /// SquareEven only: combine the lower pair (bl, br) before the upper one.
  bool lower_pair_first = false;
};

/// Row sweep (column sweep when cols > rows), absorbing one rank-4 tensor at
/// a time left to right. Largest intermediate has min(rows, cols) + 1 legs.
complex contract_generic(const ProjectedNetwork& net, const ContractOptions& options = {});

/// L = 2m: contracts four m x m blocks, then (ul.ur), (bl.br), and the pair.
complex contract_square_even(const ProjectedNetwork& net, const ContractOptions& options = {});

/// L = 2m+1 >= 3: blocks (m+1)xm, (m+1)x(m+1), mxm, mx(m+1). The upper-right
/// block is built from its right (m+1)xm part, its first column's top m
/// sites, and the centre tensor.
complex contract_square_odd(const ProjectedNetwork& net, const ContractOptions& options = {});

/// Contracts with the strategy of `plan`, after the budget check.
complex contract_network(const ProjectedNetwork& net, Strategy strategy,
                         const ContractOptions& options = {});

/// Plan for an actual network, from its largest bond.
ContractionPlan plan_for_network(const ProjectedNetwork& net, std::uint64_t budget_bytes);

/// <tau|psi>: project, plan under the budget, contract.
complex amplitude(const PepsState& state, std::string_view tau,
                  const ContractOptions& options = {});

/// Same with a fixed strategy.
complex amplitude(const PepsState& state, std::string_view tau, Strategy strategy,
                  const ContractOptions& options = {});

/// Amplitudes for several bitstrings, results in input order. Work is
/// spread over `threads` workers (0 = hardware concurrency) sharing one
/// memory budget.
std::vector<complex> amplitudes(const PepsState& state, const std::vector<std::string>& taus,
                                const ContractOptions& options = {}, unsigned threads = 0);

/// Predicted cost of `strategy` on this network's actual bond dimension.
CostReport network_cost(const ProjectedNetwork& net, Strategy strategy);

}  // namespace peps
