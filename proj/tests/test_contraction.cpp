// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "peps/cost_model.hpp"
#include "peps/error.hpp"
#include "support.hpp"

using namespace peps;

namespace {

PepsState all_h_sandwich(int rows, int cols) {
  Circuit c;
  c.rows = rows;
  c.cols = cols;
  Layer h;
  for (int r = 0; r < rows; ++r)
    for (int col = 0; col < cols; ++col) h.gates.push_back(Gate::single(GateKind::H, {r, col}));
  c.layers = {h, h};
  return evolve(c);
}

PepsState hadamard_layer(int rows, int cols) {
  PepsState s(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) s.apply_single_qubit(gates::hadamard(), {r, c});
  return s;
}

}  // namespace

TEST_CASE("project: product state gives unit and zero tensors") {
  const PepsState s(2, 3);
  const ProjectedNetwork zero = project(s, "000000");
  for (const auto& t : zero.tensors) {
    CHECK(t.shape() == Shape{1, 1, 1, 1});
    CHECK(t.data()[0] == complex(1));
  }
  const ProjectedNetwork flip = project(s, "000100");
  CHECK(flip.at(1, 0).data()[0] == complex(0));
  CHECK(flip.at(0, 0).data()[0] == complex(1));
  CHECK_THROWS_AS(project(s, "0001"), ShapeError);
}

TEST_CASE("contract_generic: single Hadamard") {
  PepsState s(1, 1);
  s.apply_single_qubit(gates::hadamard(), {0, 0});
  CHECK(contract_generic(project(s, "0")).real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("contract_generic: 4x4 d=16 matches the oracle") {
  const Circuit c = generate_rqc(4, 4, 16, 2);
  const PepsState s = evolve(c);
  const StateVector sv = simulate_statevector(c);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto tau = testing::random_bits(16, rng);
    CHECK(amplitude_deviation(contract_generic(project(s, tau)), sv.amplitude(tau), 16) < 1e-10);
  }
}

TEST_CASE("contract_generic: thin and wide lattices") {
  for (auto [rows, cols] : std::vector<std::pair<int, int>>{{1, 5}, {5, 1}, {2, 6}, {6, 2}}) {
    const Circuit c = generate_rqc(rows, cols, 9, 4);
    const PepsState s = evolve(c);
    const StateVector sv = simulate_statevector(c);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 5; ++k) {
      const auto tau = testing::random_bits(rows * cols, rng);
      CHECK(amplitude_deviation(contract_generic(project(s, tau)), sv.amplitude(tau), rows * cols) < 1e-10);
    }
  }
}

TEST_CASE("contract_square_even: all-H sandwich and block order independence") {
  CHECK(std::abs(contract_square_even(project(all_h_sandwich(2, 2), "0000")) - 1.0) < 1e-14);

  const PepsState s = evolve(generate_rqc(4, 4, 16, 6));
  std::mt19937_64 rng(7);
  ContractOptions lower;
  lower.lower_pair_first = true;
  for (int k = 0; k < 10; ++k) {
    const auto net = project(s, testing::random_bits(16, rng));
    const complex a = contract_square_even(net), b = contract_square_even(net, lower);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), 1e-300));
  }
  CHECK_THROWS_AS(contract_square_even(project(PepsState(3, 3), "000000000")), ShapeError);
}

TEST_CASE("contract_square_odd: all-H sandwich and agreement with generic") {
  CHECK(std::abs(contract_square_odd(project(all_h_sandwich(3, 3), "000000000")) - 1.0) < 1e-14);

  const PepsState s = evolve(generate_rqc(3, 3, 8, 8));
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const auto net = project(s, testing::random_bits(9, rng));
    CHECK(testing::relative(contract_square_odd(net), contract_generic(net)) < 1e-10);
  }
  CHECK_THROWS_AS(contract_square_odd(project(PepsState(2, 2), "0000")), ShapeError);
}

TEST_CASE("contract_square_odd: 5x5 d=8 matches the oracle") {
  const Circuit c = generate_rqc(5, 5, 8, 10);
  const PepsState s = evolve(c);
  const StateVector sv = simulate_statevector(c, 25);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 3; ++k) {
    const auto tau = testing::random_bits(25, rng);
    CHECK(amplitude_deviation(contract_square_odd(project(s, tau)), sv.amplitude(tau), 25) < 1e-10);
  }
}

TEST_CASE("amplitude: product state and uniform superposition") {
  CHECK(amplitude(PepsState(2, 3), "000000") == complex(1));
  const PepsState h = hadamard_layer(3, 3);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(amplitude(h, testing::random_bits(9, rng)) - std::exp2(-4.5)) < 1e-14);
}

TEST_CASE("amplitude: 4x5 d=16 matches the oracle on 100 strings") {
  const Circuit c = generate_rqc(4, 5, 16, 13);
  const PepsState s = evolve(c);
  const StateVector sv = simulate_statevector(c);
  std::mt19937_64 rng(14);
  std::vector<std::string> taus;
  for (int k = 0; k < 100; ++k) taus.push_back(testing::random_bits(20, rng));
  const auto amps = amplitudes(s, taus);
  double worst = 0;
  for (std::size_t i = 0; i < taus.size(); ++i)
    worst = std::max(worst, amplitude_deviation(amps[i], sv.amplitude(taus[i]), 20));
  CHECK(worst < 1e-10);
}

TEST_CASE("amplitude: linear under a local phase") {
  // A phase on one site scales every amplitude by that phase.
  std::mt19937_64 rng(15);
  const Circuit c = generate_rqc(3, 3, 6, 16);
  PepsState s = evolve(c);
  const auto tau = testing::random_bits(9, rng);
  const complex before = amplitude(s, tau);
  Matrix2 phase = gates::identity2();
  phase[0] = phase[3] = std::polar(1.0, 0.7);
  s.apply_single_qubit(phase, {1, 1});
  CHECK(std::abs(amplitude(s, tau) - std::polar(1.0, 0.7) * before) < 1e-13);
}

TEST_CASE("amplitude: conjugated circuit gives conjugated amplitudes") {
  Circuit c = generate_rqc(3, 3, 8, 17);
  Circuit conj = c;
  for (auto& layer : conj.layers)
    for (auto& g : layer.gates) {
      if (g.two_qubit()) {
        Matrix4 m = g.matrix2();
        for (auto& x : m) x = std::conj(x);
        g = Gate::custom(m, g.a, g.b);
      } else {
        Matrix2 m = g.matrix1();
        for (auto& x : m) x = std::conj(x);
        g = Gate::custom(m, g.a);
      }
    }
  const PepsState a = evolve(c), b = evolve(conj);
  std::mt19937_64 rng(18);
  for (int k = 0; k < 5; ++k) {
    const auto tau = testing::random_bits(9, rng);
    CHECK(std::abs(amplitude(a, tau) - std::conj(amplitude(b, tau))) < 1e-13);
  }
}

TEST_CASE("strategies agree and peak memory stays within the estimate") {
  for (int n : {4, 5}) {
    const PepsState s = evolve(generate_rqc(n, n, 16, 19));
    std::mt19937_64 rng(20);
    for (int k = 0; k < 5; ++k) {
      const auto net = project(s, testing::random_bits(n * n, rng));
      ContractionStats gs, ss;
      ContractOptions go, so;
      go.stats = &gs;
      so.stats = &ss;
      const Strategy square = n % 2 ? Strategy::SquareOdd : Strategy::SquareEven;
      const complex g = contract_network(net, Strategy::GenericRows, go);
      const complex q = contract_network(net, square, so);
      CHECK(testing::relative(q, g) < 1e-10);
      CHECK(BigInt(gs.peak_elements) <= 2 * network_cost(net, Strategy::GenericRows).space_elements);
      CHECK(BigInt(ss.peak_elements) <= 2 * network_cost(net, square).space_elements);
    }
  }
}

TEST_CASE("budget guard refuses before contracting") {
  const PepsState s = evolve(generate_rqc(4, 4, 16, 21));
  ContractOptions tiny;
  tiny.budget_bytes = 64;
  CHECK_THROWS_AS(amplitude(s, std::string(16, '0'), tiny), BudgetExceeded);

  MemoryBudget shared(std::uint64_t{1} << 20);
  ContractOptions with_shared;
  with_shared.shared_budget = &shared;
  CHECK_NOTHROW(amplitude(s, std::string(16, '0'), with_shared));
  CHECK(shared.reserved() == 0);
}

TEST_CASE("amplitudes: threaded batch keeps input order") {
  const PepsState s = evolve(generate_rqc(3, 4, 8, 22));
  std::mt19937_64 rng(23);
  std::vector<std::string> taus;
  for (int k = 0; k < 12; ++k) taus.push_back(testing::random_bits(12, rng));
  const auto serial = amplitudes(s, taus, {}, 1);
  const auto threaded = amplitudes(s, taus, {}, 4);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(serial[i] == amplitude(s, taus[i]));
    CHECK(threaded[i] == serial[i]);
  }
}
