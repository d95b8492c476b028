// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/contraction.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "peps/error.hpp"

namespace peps {

std::size_t ProjectedNetwork::bond_dimension() const {
  std::size_t chi = 1;
  for (const auto& t : tensors)
    for (std::size_t k = 0; k < 4; ++k) chi = std::max(chi, t.extent(k));
  return chi;
}

void ProjectedNetwork::validate() const {
  if (rows < 1 || cols < 1) throw ShapeError("network dimensions must be positive");
  if (tensors.size() != static_cast<std::size_t>(rows * cols))
    throw ShapeError("network tensor count does not match its dimensions");
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const DenseTensor& t = at(i, j);
      if (t.rank() != 4) throw ShapeError("network tensors must be rank 4");
      if ((j == 0 && t.extent(kNetLeft) != 1) || (j == cols - 1 && t.extent(kNetRight) != 1) ||
          (i == 0 && t.extent(kNetUp) != 1) || (i == rows - 1 && t.extent(kNetDown) != 1))
        throw ShapeError("network boundary extents must be 1");
      if (j + 1 < cols && t.extent(kNetRight) != at(i, j + 1).extent(kNetLeft))
        throw ShapeError("horizontal bond mismatch in network");
      if (i + 1 < rows && t.extent(kNetDown) != at(i + 1, j).extent(kNetUp))
        throw ShapeError("vertical bond mismatch in network");
    }
}

ProjectedNetwork project(const PepsState& state, std::string_view tau) {
  if (tau.size() != static_cast<std::size_t>(state.num_qubits()))
    throw ShapeError("bitstring length " + std::to_string(tau.size()) + " != " +
                     std::to_string(state.num_qubits()) + " qubits");
  ProjectedNetwork net;
  net.rows = state.rows();
  net.cols = state.cols();
  net.tensors.reserve(tau.size());
  for (int i = 0; i < net.rows; ++i)
    for (int j = 0; j < net.cols; ++j) {
      const char bit = tau[static_cast<std::size_t>(i * net.cols + j)];
      if (bit != '0' && bit != '1') throw ShapeError("bitstring must contain only '0'/'1'");
      const DenseTensor& a = state.tensor({i, j});
      const std::size_t half = a.size() / 2;
      const auto first = a.data().begin() + static_cast<std::ptrdiff_t>(bit == '1' ? half : 0);
      Shape shape(a.shape().begin() + 1, a.shape().end());
      net.tensors.emplace_back(std::move(shape),
                               std::vector<complex>(first, first + static_cast<std::ptrdiff_t>(half)));
    }
  return net;
}

CostReport network_cost(const ProjectedNetwork& net, Strategy strategy) {
  return estimate_cost_for_bond(net.rows, net.cols, BigInt(net.bond_dimension()), strategy);
}

ContractionPlan plan_for_network(const ProjectedNetwork& net, std::uint64_t budget_bytes) {
  return plan_for_bond(net.rows, net.cols, BigInt(net.bond_dimension()), budget_bytes);
}

namespace {

enum class Sweep { RowMajor, ColumnMajor };

/// Corner of a block where absorption starts; pick the one farthest from
/// the block's open legs.
enum class Corner { TopLeft, TopRight, BottomLeft, BottomRight };

// Label-driven contraction of a projected network: every leg is named by the
// lattice bond it sits on, so joining two pieces sums exactly the bonds they
// share.
class Contractor {
 public:
  Contractor(const ProjectedNetwork& net, const ContractOptions& options)
      : net_(net), options_(options) {}

  // Site tensor with lattice-boundary legs (extent 1) reshaped away.
  LabeledTensor site(int r, int c) const {
    const DenseTensor& e = net_.at(r, c);
    LabeledTensor out;
    Shape shape;
    auto keep = [&](bool interior, NetIndex index, IndexLabel label) {
      if (!interior) return;
      shape.push_back(e.extent(index));
      out.labels.push_back(label);
    };
    keep(c > 0, kNetLeft, IndexLabel::horizontal(r, c - 1));
    keep(c + 1 < net_.cols, kNetRight, IndexLabel::horizontal(r, c));
    keep(r > 0, kNetUp, IndexLabel::vertical(r - 1, c));
    keep(r + 1 < net_.rows, kNetDown, IndexLabel::vertical(r, c));
    out.tensor = e.reshaped(std::move(shape));
    return out;
  }

  LabeledTensor join(const LabeledTensor& a, const LabeledTensor& b) {
    LabeledTensor out = contract(a, b, options_.limits);
    if (options_.stats) {
      options_.stats->peak_elements = std::max(options_.stats->peak_elements, out.tensor.size());
      ++options_.stats->contractions;
    }
    return out;
  }

  // Absorbs the sites of [r0, r1) x [c0, c1) one at a time.
  LabeledTensor block(int r0, int r1, int c0, int c1, Sweep sweep,
                      Corner start = Corner::TopLeft) {
    std::optional<LabeledTensor> acc;
    const bool flip_rows = start == Corner::BottomLeft || start == Corner::BottomRight;
    const bool flip_cols = start == Corner::TopRight || start == Corner::BottomRight;
    auto absorb = [&](int r, int c) {
      if (flip_rows) r = r0 + r1 - 1 - r;
      if (flip_cols) c = c0 + c1 - 1 - c;
      LabeledTensor e = site(r, c);
      if (!acc) {
        if (options_.stats)
          options_.stats->peak_elements = std::max(options_.stats->peak_elements, e.tensor.size());
        acc = std::move(e);
      } else {
        acc = join(*acc, e);
      }
    };
    if (sweep == Sweep::RowMajor) {
      for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) absorb(r, c);
    } else {
      for (int c = c0; c < c1; ++c)
        for (int r = r0; r < r1; ++r) absorb(r, c);
    }
    return std::move(*acc);
  }

 private:
  const ProjectedNetwork& net_;
  const ContractOptions& options_;
};

complex scalar_of(const LabeledTensor& t) {
  if (t.tensor.size() != 1) throw ShapeError("network contraction left open legs");
  return t.tensor.data()[0];
}

// Row-major absorption leaves an open boundary as long as the block is wide.
Sweep block_sweep(int height, int width) {
  return height >= width ? Sweep::RowMajor : Sweep::ColumnMajor;
}

MemoryBudget::Reservation check_budget(const ProjectedNetwork& net, Strategy strategy,
                                       const ContractOptions& options) {
  net.validate();
  const CostReport cost = network_cost(net, strategy);
  if (cost.space_bytes > options.budget_bytes) throw BudgetExceeded(cost, options.budget_bytes);
  if (options.shared_budget) return options.shared_budget->reserve(cost);
  return {};
}

}  // namespace

complex contract_generic(const ProjectedNetwork& net, const ContractOptions& options) {
  auto reservation = check_budget(net, Strategy::GenericRows, options);
  Contractor k(net, options);
  return scalar_of(k.block(0, net.rows, 0, net.cols, block_sweep(net.rows, net.cols)));
}

complex contract_square_even(const ProjectedNetwork& net, const ContractOptions& options) {
  if (!applicable(Strategy::SquareEven, net.rows, net.cols))
    throw ShapeError("square-even contraction needs an even square lattice");
  auto reservation = check_budget(net, Strategy::SquareEven, options);
  const int m = net.rows / 2, l = net.rows;
  Contractor k(net, options);
  const LabeledTensor ul = k.block(0, m, 0, m, Sweep::RowMajor);
  const LabeledTensor ur = k.block(0, m, m, l, Sweep::RowMajor, Corner::TopRight);
  const LabeledTensor bl = k.block(m, l, 0, m, Sweep::RowMajor, Corner::BottomLeft);
  const LabeledTensor br = k.block(m, l, m, l, Sweep::RowMajor, Corner::BottomRight);
  if (options.lower_pair_first) {
    const LabeledTensor lower = k.join(bl, br);
    const LabeledTensor upper = k.join(ul, ur);
    return scalar_of(k.join(lower, upper));
  }
  const LabeledTensor upper = k.join(ul, ur);
  const LabeledTensor lower = k.join(bl, br);
  return scalar_of(k.join(upper, lower));
}

complex contract_square_odd(const ProjectedNetwork& net, const ContractOptions& options) {
  if (!applicable(Strategy::SquareOdd, net.rows, net.cols))
    throw ShapeError("square-odd contraction needs an odd square lattice of side >= 3");
  auto reservation = check_budget(net, Strategy::SquareOdd, options);
  const int m = net.rows / 2, l = net.rows;
  Contractor k(net, options);

  const LabeledTensor ul = k.block(0, m + 1, 0, m, Sweep::RowMajor);
  // Upper-right (m+1)x(m+1) block in four steps: its right (m+1)xm part,
  // the top m sites of its first column, their join, then the centre site.
  const LabeledTensor right_part = k.block(0, m + 1, m + 1, l, Sweep::RowMajor, Corner::TopRight);
  const LabeledTensor column_part = k.block(0, m, m, m + 1, Sweep::ColumnMajor);
  const LabeledTensor ur = k.join(k.join(right_part, column_part), k.site(m, m));
  const LabeledTensor bl = k.block(m + 1, l, 0, m, Sweep::RowMajor, Corner::BottomLeft);
  const LabeledTensor br = k.block(m + 1, l, m, l, Sweep::RowMajor, Corner::BottomRight);

  const LabeledTensor upper = k.join(ul, ur);
  const LabeledTensor lower = k.join(bl, br);
  return scalar_of(k.join(upper, lower));
}

complex contract_network(const ProjectedNetwork& net, Strategy strategy,
                         const ContractOptions& options) {
  switch (strategy) {
    case Strategy::GenericRows: return contract_generic(net, options);
    case Strategy::SquareEven: return contract_square_even(net, options);
    case Strategy::SquareOdd: return contract_square_odd(net, options);
    case Strategy::Bristlecone: break;
  }
  throw ShapeError("strategy " + to_string(strategy) + " cannot contract a rectangular network");
}

complex amplitude(const PepsState& state, std::string_view tau, const ContractOptions& options) {
  const ProjectedNetwork net = project(state, tau);
  const ContractionPlan plan = plan_for_network(net, options.budget_bytes);
  return contract_network(net, plan.strategy, options);
}

complex amplitude(const PepsState& state, std::string_view tau, Strategy strategy,
                  const ContractOptions& options) {
  return contract_network(project(state, tau), strategy, options);
}

std::vector<complex> amplitudes(const PepsState& state, const std::vector<std::string>& taus,
                                const ContractOptions& options, unsigned threads) {
  std::vector<complex> out(taus.size());
  if (taus.empty()) return out;

  // Every projection of one state has the same bond extents, so one plan
  // serves all bitstrings.
  const ProjectedNetwork probe = project(state, taus.front());
  const ContractionPlan plan = plan_for_network(probe, options.budget_bytes);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto per_task = plan.cost.space_bytes.convert_to<std::uint64_t>();
  const std::uint64_t fit = per_task == 0 ? threads : options.budget_bytes / per_task;
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(fit, 1, threads));
  threads = std::min<unsigned>(threads, static_cast<unsigned>(taus.size()));

  MemoryBudget local(options.budget_bytes);
  ContractOptions worker_options = options;
  if (!worker_options.shared_budget) worker_options.shared_budget = &local;
  worker_options.stats = nullptr;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < taus.size();) {
      try {
        out[i] = contract_network(project(state, taus[i]), plan.strategy, worker_options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = taus.size();
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace peps
