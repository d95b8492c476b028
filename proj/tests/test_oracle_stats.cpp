// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "peps/error.hpp"
#include "peps/statistics.hpp"
#include "support.hpp"

using namespace peps;

TEST_CASE("basis index ordering: first character is the most significant bit") {
  CHECK(basis_index("100") == 4);
  CHECK(basis_index("001") == 1);
  CHECK(basis_string(6, 4) == "0110");
  CHECK_THROWS_AS(basis_index("012"), ShapeError);
}

TEST_CASE("simulate_statevector: single H") {
  Circuit c;
  c.layers = {{{Gate::single(GateKind::H, {0, 0})}}};
  const StateVector sv = simulate_statevector(c);
  CHECK(sv.amplitudes()[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(sv.amplitudes()[1].real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("simulate_statevector: H H, CZ, H H on a 2x1 lattice") {
  Circuit c;
  c.rows = 2;
  c.cols = 1;
  const Layer h{{Gate::single(GateKind::H, {0, 0}), Gate::single(GateKind::H, {1, 0})}};
  c.layers = {h, {{Gate::cz({0, 0}, {1, 0})}}, h};
  const StateVector sv = simulate_statevector(c);
  const double want[4] = {0.5, 0.5, 0.5, -0.5};
  for (int i = 0; i < 4; ++i) {
    CHECK(sv.amplitudes()[static_cast<std::size_t>(i)].real() == doctest::Approx(want[i]));
    CHECK(std::abs(sv.amplitudes()[static_cast<std::size_t>(i)].imag()) < 1e-15);
  }
}

TEST_CASE("gate matrices") {
  CHECK(is_unitary(gates::x_half(), 2));
  CHECK(is_unitary(gates::y_half(), 2));
  CHECK(is_unitary(gates::t(), 2));
  const auto xx = multiply(gates::x_half(), gates::x_half());
  const auto yy = multiply(gates::y_half(), gates::y_half());
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(xx[i] - gates::pauli_x()[i]) < 1e-15);
    CHECK(std::abs(yy[i] - gates::pauli_y()[i]) < 1e-15);
  }
  const auto t2 = multiply(gates::t(), gates::t());
  CHECK(std::abs(t2[3] - complex(0, 1)) < 1e-15);
}

TEST_CASE("oracle preserves the norm and enforces its qubit limit") {
  CHECK(simulate_statevector(generate_rqc(3, 4, 12, 1)).norm() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(StateVector(30), ShapeError);
}

TEST_CASE("amplitude_deviation uses a floor for tiny amplitudes") {
  CHECK(amplitude_deviation(1.1, 1.0, 4) == doctest::Approx(0.1));
  CHECK(amplitude_deviation(1e-3, 0.0, 4) == doctest::Approx(4e-3));
}

TEST_CASE("porter_thomas_report: exponential sample is chaotic") {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> e(1.0);
  const double dim = 65536;
  int passes = 0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> p(10000);
    for (auto& x : p) x = e(rng) / dim;
    const DistributionReport r = porter_thomas_report(p, dim);
    CHECK(r.ks_critical_99 == doctest::Approx(0.0163));
    passes += r.ks_distance < 0.02;
    CHECK(r.chaotic);
  }
  CHECK(passes == 5);
}

TEST_CASE("porter_thomas_report: point mass is not chaotic") {
  std::vector<double> p(1024, 1.0 / 1024);
  const DistributionReport r = porter_thomas_report(p, 1024);
  CHECK(r.ks_distance == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-12));
  CHECK_FALSE(r.chaotic);
}

TEST_CASE("porter_thomas_report: invariant under rescaling p and D together") {
  std::mt19937_64 rng(2);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(500), q(500);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = e(rng) / 100.0;
    q[i] = p[i] / 8.0;
  }
  CHECK(porter_thomas_report(p, 100).ks_distance ==
        doctest::Approx(porter_thomas_report(q, 800).ks_distance).epsilon(1e-12));
}

TEST_CASE("porter_thomas_report: 4x4 d=24 oracle distribution") {
  const StateVector sv = simulate_statevector(generate_rqc(4, 4, 24, 1));
  std::vector<double> p;
  for (auto a : sv.amplitudes()) p.push_back(std::norm(a));
  CHECK(porter_thomas_report(p, 65536).ks_distance < 0.03);
}

TEST_CASE("histogram CSV") {
  std::vector<double> p{0.01, 0.02, 0.5};
  const DistributionReport r = porter_thomas_report(p, 10, {4, 8.0});
  REQUIRE(r.histogram.size() == 4);
  CHECK(r.histogram[0].count == 2);
  const std::string csv = histogram_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,empirical_log_density,theory_log_density");
  std::getline(in, line);
  CHECK(line.rfind("1,", 0) == 0);
  std::getline(in, line);
  CHECK(line.find(",,") != std::string::npos);
  CHECK_THROWS_AS(porter_thomas_report(std::vector<double>{}, 4), ShapeError);
}

TEST_CASE("chi_square_test") {
  const std::vector<std::uint64_t> fair{50, 50};
  const std::vector<double> half{50, 50};
  const auto ok = chi_square_test(fair, half);
  CHECK(ok.statistic == doctest::Approx(0.0));
  CHECK(ok.degrees_of_freedom == 1);
  CHECK(ok.p_value == doctest::Approx(1.0));

  const std::vector<std::uint64_t> skew{90, 10};
  CHECK(chi_square_test(skew, half).p_value < 1e-10);

  // Sparse categories pool into one.
  const std::vector<std::uint64_t> sparse{48, 48, 2, 2};
  const std::vector<double> sparse_exp{48, 48, 2, 2};
  CHECK(chi_square_test(sparse, sparse_exp).degrees_of_freedom == 2);

  const std::vector<std::uint64_t> impossible{10, 1};
  const std::vector<double> zero{11, 0};
  CHECK(chi_square_test(impossible, zero).p_value == 0.0);
}
