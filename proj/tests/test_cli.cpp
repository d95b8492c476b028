// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "peps/circuit.hpp"
#include "peps/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = peps::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("peps_cli_test_" + name);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("generate: parseable, deterministic, d=0 has two H layers") {
  const auto a = temp_path("gen_a.txt"), b = temp_path("gen_b.txt");
  REQUIRE(run({"generate", "--rows", "4", "--cols", "4", "--depth", "8", "--seed", "7", "-o", a}).code == 0);
  REQUIRE(run({"generate", "--rows", "4", "--cols", "4", "--depth", "8", "--seed", "7", "-o", b}).code == 0);
  const std::string text = read_file(a);
  CHECK(text == read_file(b));
  CHECK(peps::parse_circuit(text) == peps::generate_rqc(4, 4, 8, 7));

  const Result zero = run({"generate", "--rows", "2", "--cols", "2", "--depth", "0", "--seed", "1"});
  REQUIRE(zero.code == 0);
  const peps::Circuit c = peps::parse_circuit(zero.out);
  REQUIRE(c.layers.size() == 2);
  for (const auto& layer : c.layers) {
    CHECK(layer.gates.size() == 4);
    for (const auto& g : layer.gates) CHECK(g.kind == peps::GateKind::H);
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("amplitude: all-H sandwich record") {
  const auto path = temp_path("hh.txt");
  std::ofstream(path) << "lattice 2 2\nlayer\nh 0 0\nh 0 1\nh 1 0\nh 1 1\n"
                         "layer\nh 0 0\nh 0 1\nh 1 0\nh 1 1\n";
  const Result r = run({"amplitude", "--circuit", path, "--tau", "0000"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "tau, re, im, prob");
  CHECK(ls[1] == "0000, 1.0, 0.0, 1.0");
  std::filesystem::remove(path);
}

TEST_CASE("amplitude: 4x4 d=16 verified against the oracle") {
  const Result r = run({"amplitude", "--rows", "4", "--cols", "4", "--depth", "16", "--seed", "3",
                        "--random-amplitudes", "100", "--verify-oracle"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 103);
  CHECK(r.out.find("max relative deviation") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("amplitude: deterministic random bitstrings") {
  const std::vector<std::string> args{"amplitude", "--rows", "3", "--cols", "3", "--depth", "8",
                                      "--seed", "2", "--random-amplitudes", "5"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("amplitude: 8x8 d=40 is refused citing 32 TiB") {
  const Result r = run({"amplitude", "--rows", "8", "--cols", "8", "--depth", "40", "--seed", "1",
                        "--tau", std::string(64, '0')});
  CHECK(r.code == peps::cli::kBudgetRefusal);
  CHECK(r.err.find("32 TiB") != std::string::npos);
  CHECK(r.err.find("2199023255552 elements") != std::string::npos);
}

TEST_CASE("amplitude: configuration errors") {
  CHECK(run({"amplitude", "--tau", "0"}).code == peps::cli::kConfigError);
  CHECK(run({"amplitude", "--rows", "2", "--cols", "2", "--depth", "2", "--tau", "01"}).code ==
        peps::cli::kConfigError);
  CHECK(run({"amplitude", "--circuit", "/nonexistent/file", "--tau", "0"}).code == peps::cli::kConfigError);
  CHECK(run({"frobnicate"}).code == peps::cli::kConfigError);
  CHECK(run({}).code == peps::cli::kConfigError);

  const auto bad = temp_path("bad.txt");
  std::ofstream(bad) << "lattice 2 2\nlayer\ncz 0 0\n";
  const Result r = run({"amplitude", "--circuit", bad, "--tau", "0000"});
  CHECK(r.code == peps::cli::kConfigError);
  CHECK(r.err.find("line 3") != std::string::npos);
  std::filesystem::remove(bad);
}

TEST_CASE("amplitude: budget flag overrides the environment") {
  ::setenv(peps::cli::kBudgetEnv, "16", 1);
  const std::vector<std::string> base{"amplitude", "--rows", "3", "--cols", "3", "--depth", "8",
                                      "--seed", "1", "--tau", "000000000"};
  CHECK(run(base).code == peps::cli::kBudgetRefusal);
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--memory-budget", "1GiB"});
  CHECK(run(with_flag).code == 0);
  ::unsetenv(peps::cli::kBudgetEnv);
  CHECK(run(base).code == 0);
}

TEST_CASE("estimate: published figures") {
  const Result nine = run({"estimate", "9", "9", "40"});
  CHECK(nine.code == 0);
  CHECK(nine.out.find("SquareOdd,-,1161084278931456,18577348462903296,16.5 PiB") != std::string::npos);

  const Result twelve = run({"estimate", "12", "12", "32"});
  CHECK(twelve.out.find("SquareEven,-,562949953421312,9007199254740992,8 PiB") != std::string::npos);

  const Result bristle = run({"estimate", "--bristlecone", "32"});
  CHECK(bristle.code == 0);
  CHECK(bristle.out.find("Bristlecone,-,35184372088832,562949953421312,0.5 PiB") != std::string::npos);

  const Result small = run({"estimate", "4", "4", "8"});
  CHECK(small.out.find("# plan SquareEven") != std::string::npos);
}

TEST_CASE("estimate: sweep and bad strategy") {
  const Result r = run({"estimate", "4", "4", "8", "--sweep", "depth", "--from", "0", "--to", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1 + 4 * 2);
  CHECK(run({"estimate", "4", "7", "8", "--strategy", "even"}).code == peps::cli::kConfigError);
}

TEST_CASE("sample: measure-all on |0...0> and a fair coin") {
  const auto zero = temp_path("zero.txt");
  std::ofstream(zero) << "lattice 1 3\nlayer\n";
  const Result z = run({"sample", "--circuit", zero, "--measure-all", "--shots", "20"});
  REQUIRE(z.code == 0);
  const auto zl = lines(z.out);
  REQUIRE(zl.size() == 21);
  CHECK(zl[0] == "shot,bits");
  for (std::size_t i = 1; i < zl.size(); ++i) CHECK(zl[i] == std::to_string(i - 1) + ",000");

  const auto coin = temp_path("coin.txt");
  std::ofstream(coin) << "lattice 1 1\nlayer\nh 0 0\n";
  const Result c = run({"sample", "--circuit", coin, "--measure-all", "--shots", "10000",
                        "--measure-seed", "4"});
  REQUIRE(c.code == 0);
  std::size_t ones = 0;
  for (const auto& l : lines(c.out)) ones += l.ends_with(",1");
  CHECK(ones >= 4800);
  CHECK(ones <= 5200);
  std::filesystem::remove(zero);
  std::filesystem::remove(coin);
}

TEST_CASE("sample: porter-thomas report") {
  const Result r = run({"sample", "--rows", "3", "--cols", "3", "--depth", "16", "--seed", "1",
                        "--porter-thomas", "500"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# samples 500 ks_distance") != std::string::npos);
  CHECK(r.out.find("x,empirical_log_density,theory_log_density") != std::string::npos);
  CHECK(run({"sample", "--rows", "2", "--cols", "2", "--depth", "2"}).code == peps::cli::kConfigError);
}

TEST_CASE("verify: quick grid passes") {
  const Result r = run({"verify", "--taus", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# all cases passed") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
