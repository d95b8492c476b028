// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/measurement.hpp"

#include <cmath>
#include <unordered_map>

#include "peps/error.hpp"
#include "peps/rng.hpp"

namespace peps {

namespace {

constexpr double kUnderflow = 1e-14;

DenseTensor slice_physical(const DenseTensor& a, int bit) {
  const std::size_t half = a.size() / 2;
  Shape shape = a.shape();
  shape[kPhys] = 1;
  const auto first = a.data().begin() + static_cast<std::ptrdiff_t>(bit == 1 ? half : 0);
  return DenseTensor(std::move(shape),
                     std::vector<complex>(first, first + static_cast<std::ptrdiff_t>(half)));
}

double enumerate_norm(const PepsState& state, const BitMask& fixed,
                      const MeasureOptions& options) {
  std::vector<std::size_t> free_sites;
  std::string base(static_cast<std::size_t>(state.num_qubits()), '0');
  for (std::size_t q = 0; q < fixed.size(); ++q) {
    if (fixed[q])
      base[q] = *fixed[q] == 1 ? '1' : '0';
    else
      free_sites.push_back(q);
  }
  std::vector<std::string> taus;
  taus.reserve(std::size_t{1} << free_sites.size());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_sites.size()); ++bits) {
    std::string tau = base;
    for (std::size_t k = 0; k < free_sites.size(); ++k)
      if ((bits >> k) & 1) tau[free_sites[k]] = '1';
    taus.push_back(std::move(tau));
  }
  ContractOptions co;
  co.budget_bytes = options.budget_bytes;
  double sum = 0.0;
  for (const complex& a : amplitudes(state, taus, co)) sum += std::norm(a);
  return sum;
}

}  // namespace

ProjectedNetwork double_layer(const PepsState& state, const BitMask& fixed) {
  if (fixed.size() != static_cast<std::size_t>(state.num_qubits()))
    throw ShapeError("bit mask length does not match qubit count");
  ProjectedNetwork net;
  net.rows = state.rows();
  net.cols = state.cols();
  net.tensors.reserve(fixed.size());
  for (int i = 0; i < net.rows; ++i)
    for (int j = 0; j < net.cols; ++j) {
      const auto& bit = fixed[static_cast<std::size_t>(i * net.cols + j)];
      const DenseTensor& a = state.tensor({i, j});
      const DenseTensor ket = bit ? slice_physical(a, *bit) : a;
      // [l, r, u, d, l', r', u', d'] -> [(l l'), (r r'), (u u'), (d d')]
      const DenseTensor both = contract(ket, ket.conj(), {{kPhys, kPhys}});
      net.tensors.push_back(
          merge_indices(permute(both, {0, 4, 1, 5, 2, 6, 3, 7}), {{0, 1}, {2, 3}, {4, 5}, {6, 7}}));
    }
  return net;
}

double projected_norm(const PepsState& state, const BitMask& fixed, const MeasureOptions& options) {
  bool use_double = options.method == MarginalMethod::DoubleLayer;
  if (options.method == MarginalMethod::Auto) {
    // Double-layer bond is chi^2; check the generic sweep's prediction on it.
    const BigInt chi = state.bond_dimension();
    const auto plan_bytes = [&] {
      try {
        return plan_for_bond(state.rows(), state.cols(), chi * chi, options.budget_bytes).cost.space_bytes;
      } catch (const BudgetExceeded& e) {
        return e.report().space_bytes;
      }
    }();
    use_double = plan_bytes <= options.budget_bytes;
    if (!use_double && state.num_qubits() > options.enumeration_limit) {
      const CostReport cost = estimate_cost_for_bond(state.rows(), state.cols(), chi * chi,
                                                     Strategy::GenericRows);
      throw BudgetExceeded(cost, options.budget_bytes);
    }
  }
  if (!use_double) {
    if (state.num_qubits() > options.enumeration_limit)
      throw ShapeError("enumeration limited to " + std::to_string(options.enumeration_limit) +
                       " qubits");
    return enumerate_norm(state, fixed, options);
  }
  const ProjectedNetwork net = double_layer(state, fixed);
  const ContractionPlan plan = plan_for_network(net, options.budget_bytes);
  ContractOptions co;
  co.budget_bytes = options.budget_bytes;
  return std::max(0.0, contract_network(net, plan.strategy, co).real());
}

namespace {

// Unnormalized weights of the two outcomes at `site`.
std::pair<double, double> outcome_weights(const PepsState& state, Site site,
                                          const MeasureOptions& options) {
  (void)state.tensor(site);  // range check
  const auto q = static_cast<std::size_t>(site.row * state.cols() + site.col);
  BitMask mask(static_cast<std::size_t>(state.num_qubits()));
  mask[q] = 0;
  const double w0 = projected_norm(state, mask, options);
  mask[q] = 1;
  const double w1 = projected_norm(state, mask, options);
  if (w0 < kUnderflow && w1 < kUnderflow)
    throw NumericalError("both measurement outcomes have vanishing weight; state is corrupted");
  return {w0, w1};
}

}  // namespace

Marginal qubit_marginal(const PepsState& state, Site site, const MeasureOptions& options) {
  const auto [w0, w1] = outcome_weights(state, site, options);
  return {w0 / (w0 + w1), w1 / (w0 + w1)};
}

Measurement measure_qubit(const PepsState& state, Site site, std::mt19937_64& rng,
                          const MeasureOptions& options) {
  const auto [w0, w1] = outcome_weights(state, site, options);
  const double p0 = w0 / (w0 + w1);
  const int outcome = uniform01(rng) < p0 ? 0 : 1;
  Measurement m{outcome, outcome == 0 ? p0 : 1.0 - p0, state};
  DenseTensor& t = m.collapsed.tensor(site);
  const std::size_t half = t.size() / 2;
  const double scale = 1.0 / std::sqrt(outcome == 0 ? w0 : w1);
  for (std::size_t k = 0; k < half; ++k) {
    t.data()[outcome == 0 ? half + k : k] = 0.0;
    t.data()[outcome == 0 ? k : half + k] *= scale;
  }
  return m;
}

std::vector<std::string> sample_measure_all(const PepsState& state, std::size_t shots,
                                            std::uint64_t seed, const MeasureOptions& options) {
  const auto n = static_cast<std::size_t>(state.num_qubits());
  std::mt19937_64 rng = make_stream(seed, kMeasureStream);
  std::unordered_map<std::string, double> p0_after;  // prefix -> P(next bit = 0 | prefix)

  auto conditional_p0 = [&](const std::string& prefix) {
    if (auto it = p0_after.find(prefix); it != p0_after.end()) return it->second;
    BitMask mask(n);
    for (std::size_t k = 0; k < prefix.size(); ++k) mask[k] = prefix[k] - '0';
    mask[prefix.size()] = 0;
    const double w0 = projected_norm(state, mask, options);
    mask[prefix.size()] = 1;
    const double w1 = projected_norm(state, mask, options);
    if (w0 < kUnderflow && w1 < kUnderflow)
      throw NumericalError("measured prefix " + prefix + " has vanishing weight");
    const double p0 = w0 / (w0 + w1);
    p0_after.emplace(prefix, p0);
    return p0;
  };

  std::vector<std::string> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    std::string bits;
    bits.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
      const double p0 = conditional_p0(bits);
      bits.push_back(uniform01(rng) < p0 ? '0' : '1');
    }
    out.push_back(std::move(bits));
  }
  return out;
}

}  // namespace peps
