// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "peps/contraction.hpp"
#include "peps/peps_state.hpp"

namespace peps {

enum class MarginalMethod {
  Auto,         ///< double layer if it fits the budget, else enumeration
  DoubleLayer,  ///< <psi|P|psi> as one network with bond chi^2
  Enumeration,  ///< sum of |<tau|psi>|^2 over consistent bitstrings
};

struct MeasureOptions {
  std::uint64_t budget_bytes = kDefaultBudgetBytes;
  /// Largest qubit count for which enumeration is attempted.
  int enumeration_limit = 22;
  MarginalMethod method = MarginalMethod::Auto;
};

/// Per-site constraint: a fixed bit, or nullopt to sum over sigma.
using BitMask = std::vector<std::optional<int>>;

/// Network for <psi|P|psi> where P projects the fixed sites onto their bits.
/// Bond (k, k') of the ket and bra layers is bundled ket-major.
ProjectedNetwork double_layer(const PepsState& state, const BitMask& fixed);

/// Squared norm of the state projected onto the fixed bits (unnormalized).
double projected_norm(const PepsState& state, const BitMask& fixed,
                      const MeasureOptions& options = {});

struct Marginal {
  double p0 = 0.0;
  double p1 = 0.0;
};

/// Normalized outcome probabilities of one qubit. Throws NumericalError when
/// both unnormalized weights fall below 1e-14.
Marginal qubit_marginal(const PepsState& state, Site site, const MeasureOptions& options = {});

struct Measurement {
  int outcome = 0;
  double probability = 0.0;
  PepsState collapsed;
};

/// Samples one qubit and returns a renormalized copy projected onto the
/// outcome. The input state is left untouched.
Measurement measure_qubit(const PepsState& state, Site site, std::mt19937_64& rng,
                          const MeasureOptions& options = {});

/// `shots` sequential row-major measurements of every qubit. Conditional
/// probabilities are cached per measured prefix, so repeated prefixes cost
/// nothing. Deterministic in `seed`.
std::vector<std::string> sample_measure_all(const PepsState& state, std::size_t shots,
                                            std::uint64_t seed, const MeasureOptions& options = {});

}  // namespace peps
