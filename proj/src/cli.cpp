// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "peps/circuit.hpp"
#include "peps/contraction.hpp"
#include "peps/cost_model.hpp"
#include "peps/error.hpp"
#include "peps/measurement.hpp"
#include "peps/oracle.hpp"
#include "peps/rng.hpp"
#include "peps/statistics.hpp"

namespace peps::cli {

namespace {

constexpr double kOracleTolerance = 1e-10;

struct RunConfig {
  std::string circuit_path;
  int rows = 0;
  int cols = 0;
  int depth = -1;
  std::optional<std::uint64_t> seed;

  std::vector<std::string> taus;
  std::size_t random_amplitudes = 0;
  std::optional<std::uint64_t> tau_seed;
  std::string strategy = "auto";
  std::string memory_budget;
  std::string output;

  bool verify_oracle = false;

  std::size_t porter_thomas = 0;
  std::string records;
  bool measure_all = false;
  std::size_t shots = 1;
  std::uint64_t measure_seed = 0;
};

/// Writes to a file when a path is given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ShapeError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::uint64_t resolve_budget(const RunConfig& cfg) {
  if (!cfg.memory_budget.empty()) return parse_byte_size(cfg.memory_budget);
  if (const char* env = std::getenv(kBudgetEnv); env && *env) return parse_byte_size(env);
  return kDefaultBudgetBytes;
}

Circuit load_circuit(const RunConfig& cfg) {
  const bool from_file = !cfg.circuit_path.empty();
  const bool from_params = cfg.rows > 0 || cfg.cols > 0 || cfg.depth >= 0;
  if (from_file == from_params)
    throw ShapeError("give exactly one circuit source: --circuit FILE or --rows/--cols/--depth");
  if (from_file) {
    std::ifstream in(cfg.circuit_path);
    if (!in) throw ShapeError("cannot read circuit file '" + cfg.circuit_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    return parse_circuit(text.str());
  }
  if (cfg.rows < 1 || cfg.cols < 1 || cfg.depth < 0)
    throw ShapeError("--rows, --cols and --depth are all required");
  return generate_rqc(cfg.rows, cfg.cols, cfg.depth, cfg.seed.value_or(0));
}

std::vector<std::string> random_taus(int num_qubits, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng = make_stream(seed, kTauStream);
  std::vector<std::string> taus(count, std::string(static_cast<std::size_t>(num_qubits), '0'));
  for (auto& tau : taus)
    for (auto& bit : tau) bit = uniform_below(rng, 2) ? '1' : '0';
  return taus;
}

std::vector<std::string> select_taus(const RunConfig& cfg, const Circuit& circuit) {
  std::vector<std::string> taus = cfg.taus;
  for (const auto& tau : taus)
    if (tau.size() != static_cast<std::size_t>(circuit.num_qubits()))
      throw ShapeError("bitstring '" + tau + "' does not have " +
                       std::to_string(circuit.num_qubits()) + " bits");
  if (cfg.random_amplitudes > 0) {
    auto extra = random_taus(circuit.num_qubits(), cfg.random_amplitudes,
                             cfg.tau_seed.value_or(cfg.seed.value_or(0)));
    taus.insert(taus.end(), extra.begin(), extra.end());
  }
  if (taus.empty()) throw ShapeError("no bitstrings: use --tau or --random-amplitudes");
  return taus;
}

// Picks the strategy before evolving, from the bond dimension the circuit
// will reach, so oversized runs are refused up front.
Strategy choose_strategy(const RunConfig& cfg, const Circuit& circuit, std::uint64_t budget) {
  const BigInt chi = predicted_bond_dimension(circuit);
  if (cfg.strategy == "auto") return plan_for_bond(circuit.rows, circuit.cols, chi, budget).strategy;
  const Strategy s = parse_strategy(cfg.strategy);
  const CostReport cost = estimate_cost_for_bond(circuit.rows, circuit.cols, chi, s);
  if (cost.space_bytes > budget) throw BudgetExceeded(cost, budget);
  return s;
}

std::vector<complex> compute_amplitudes(const PepsState& state, const std::vector<std::string>& taus,
                                        Strategy strategy, std::uint64_t budget) {
  ContractOptions options;
  options.budget_bytes = budget;
  std::vector<complex> out;
  out.reserve(taus.size());
  for (const auto& tau : taus) out.push_back(amplitude(state, tau, strategy, options));
  return out;
}

// 12 significant digits, always with a decimal point or exponent.
std::string number(double x) {
  std::string s = fmt::format("{:.12g}", x);
  if (s.find_first_of(".eEin") == std::string::npos) s += ".0";
  return s;
}

void write_records(std::ostream& os, const std::vector<std::string>& taus,
                   const std::vector<complex>& amps) {
  os << "tau, re, im, prob\n";
  for (std::size_t i = 0; i < taus.size(); ++i)
    os << taus[i] << ", " << number(amps[i].real()) << ", " << number(amps[i].imag()) << ", "
       << number(std::norm(amps[i])) << "\n";
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.circuit_path.empty()) throw ShapeError("generate takes --rows/--cols/--depth, not --circuit");
  const Circuit circuit = load_circuit(cfg);
  Sink sink(cfg.output, out);
  *sink << serialize_circuit(circuit);
  return kSuccess;
}

int cmd_amplitude(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t budget = resolve_budget(cfg);
  const Circuit circuit = load_circuit(cfg);
  const std::vector<std::string> taus = select_taus(cfg, circuit);
  const Strategy strategy = choose_strategy(cfg, circuit, budget);
  const PepsState state = evolve(circuit);
  const std::vector<complex> amps = compute_amplitudes(state, taus, strategy, budget);

  Sink sink(cfg.output, out);
  write_records(*sink, taus, amps);
  if (!cfg.verify_oracle) return kSuccess;

  const StateVector sv = simulate_statevector(circuit);
  double worst = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i)
    worst = std::max(worst, amplitude_deviation(amps[i], sv.amplitude(taus[i]), circuit.num_qubits()));
  const bool ok = worst <= kOracleTolerance;
  out << fmt::format("# strategy {}\n# max relative deviation {:.3e} ({} bitstrings): {}\n",
                     to_string(strategy), worst, taus.size(), ok ? "PASS" : "FAIL");
  return ok ? kSuccess : kNumericalFailure;
}

void write_cost_row(std::ostream& os, int rows, int cols, int depth, const CostReport& r) {
  os << fmt::format("{},{},{},{},{},{},{},{},{}\n", rows, cols, depth, to_string(r.strategy),
                    r.strategy == Strategy::GenericRows ? to_string(r.orientation) : "-",
                    r.space_elements.str(), r.space_bytes.str(), format_bytes(r.space_bytes),
                    r.time_ops.str());
}

constexpr const char* kCostHeader =
    "rows,cols,depth,strategy,orientation,space_elements,space_bytes,space_human,time_ops\n";

struct EstimateArgs {
  int rows = 0;
  int cols = 0;
  int depth = -1;
  std::optional<int> bristlecone;
  std::string sweep;
  int from = 0;
  int to = -1;
};

std::vector<Strategy> strategies_for(const std::string& choice, int rows, int cols) {
  if (choice == "auto" || choice == "all") {
    std::vector<Strategy> out;
    for (Strategy s : {Strategy::GenericRows, Strategy::SquareEven, Strategy::SquareOdd})
      if (applicable(s, rows, cols)) out.push_back(s);
    return out;
  }
  return {parse_strategy(choice)};
}

int cmd_estimate(const RunConfig& cfg, const EstimateArgs& args, std::ostream& out) {
  Sink sink(cfg.output, out);
  std::ostream& os = *sink;
  if (args.bristlecone) {
    os << kCostHeader;
    write_cost_row(os, 12, 6, *args.bristlecone, estimate_cost(12, 6, *args.bristlecone, Strategy::Bristlecone));
    return kSuccess;
  }

  if (!args.sweep.empty()) {
    if (args.to < args.from) throw ShapeError("--sweep needs --from <= --to");
    os << kCostHeader;
    for (int v = args.from; v <= args.to; ++v) {
      int rows = args.rows, cols = args.cols, depth = args.depth;
      if (args.sweep == "rows") rows = v;
      else if (args.sweep == "square") rows = cols = v;
      else if (args.sweep == "depth") depth = v;
      else throw ShapeError("--sweep takes rows, square or depth");
      if (rows < 1 || cols < 1 || depth < 0)
        throw ShapeError("sweep needs the fixed dimensions as positionals");
      for (Strategy s : strategies_for(cfg.strategy, rows, cols))
        if (applicable(s, rows, cols)) write_cost_row(os, rows, cols, depth, estimate_cost(rows, cols, depth, s));
    }
    return kSuccess;
  }

  if (args.rows < 1 || args.cols < 1 || args.depth < 0)
    throw ShapeError("estimate needs <rows> <cols> <depth>");
  os << kCostHeader;
  for (Strategy s : strategies_for(cfg.strategy, args.rows, args.cols))
    write_cost_row(os, args.rows, args.cols, args.depth, estimate_cost(args.rows, args.cols, args.depth, s));

  const std::uint64_t budget = resolve_budget(cfg);
  try {
    const ContractionPlan plan = plan_contraction(args.rows, args.cols, args.depth, budget);
    os << fmt::format("# plan {} within budget {}: space {} ({} bytes), time {} ops\n",
                      to_string(plan.strategy), format_bytes(BigInt(budget)),
                      format_bytes(plan.cost.space_bytes), plan.cost.space_bytes.str(),
                      plan.cost.time_ops.str());
  } catch (const BudgetExceeded& e) {
    os << fmt::format("# no strategy fits budget {}; smallest is {} needing {} ({} bytes)\n",
                      format_bytes(BigInt(budget)), to_string(e.report().strategy),
                      format_bytes(e.report().space_bytes), e.report().space_bytes.str());
  }
  return kSuccess;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  if ((cfg.porter_thomas > 0) == cfg.measure_all)
    throw ShapeError("sample needs exactly one of --porter-thomas K or --measure-all");
  const std::uint64_t budget = resolve_budget(cfg);
  const Circuit circuit = load_circuit(cfg);
  Sink sink(cfg.output, out);

  if (cfg.measure_all) {
    const PepsState state = evolve(circuit);
    MeasureOptions options;
    options.budget_bytes = budget;
    const auto shots = sample_measure_all(state, cfg.shots, cfg.measure_seed, options);
    *sink << "shot,bits\n";
    for (std::size_t i = 0; i < shots.size(); ++i) *sink << i << "," << shots[i] << "\n";
    return kSuccess;
  }

  const Strategy strategy = choose_strategy(cfg, circuit, budget);
  const PepsState state = evolve(circuit);
  const auto taus = random_taus(circuit.num_qubits(), cfg.porter_thomas,
                                cfg.tau_seed.value_or(cfg.seed.value_or(0)));
  const std::vector<complex> amps = compute_amplitudes(state, taus, strategy, budget);
  std::vector<double> probs;
  probs.reserve(amps.size());
  for (const auto& a : amps) probs.push_back(std::norm(a));
  const DistributionReport report =
      porter_thomas_report(probs, std::exp2(static_cast<double>(circuit.num_qubits())));

  if (!cfg.records.empty()) {
    Sink records(cfg.records, out);
    write_records(*records, taus, amps);
  }
  out << fmt::format("# samples {} ks_distance {:.6f} critical_99 {:.6f} porter_thomas {}\n",
                     probs.size(), report.ks_distance, report.ks_critical_99,
                     report.chaotic ? "yes" : "no");
  *sink << histogram_csv(report);
  return kSuccess;
}

struct VerifyArgs {
  bool full = false;
  std::size_t taus = 0;
};

int cmd_verify(const RunConfig& cfg, const VerifyArgs& args, std::ostream& out) {
  const std::uint64_t budget = resolve_budget(cfg);
  std::vector<std::pair<int, int>> shapes{{2, 2}, {2, 3}, {3, 3}};
  std::vector<int> depths{4, 8};
  std::vector<std::uint64_t> seeds{1};
  std::size_t tau_count = args.taus ? args.taus : 20;
  if (args.full) {
    shapes = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}, {4, 5}};
    depths = {4, 8, 16};
    seeds = {1, 2, 3};
    tau_count = args.taus ? args.taus : 100;
  }
  out << "rows,cols,depth,seed,strategy,bitstrings,max_relative_deviation,status\n";
  bool all_ok = true;
  for (auto [rows, cols] : shapes)
    for (int depth : depths)
      for (std::uint64_t seed : seeds) {
        const Circuit circuit = generate_rqc(rows, cols, depth, seed);
        const PepsState state = evolve(circuit);
        const StateVector sv = simulate_statevector(circuit);
        const auto taus = random_taus(circuit.num_qubits(), tau_count, seed);
        ContractOptions options;
        options.budget_bytes = budget;
        const ContractionPlan plan = plan_for_network(project(state, taus.front()), budget);
        const auto amps = amplitudes(state, taus, options);
        double worst = 0.0;
        for (std::size_t i = 0; i < taus.size(); ++i)
          worst = std::max(worst, amplitude_deviation(amps[i], sv.amplitude(taus[i]), circuit.num_qubits()));
        const bool ok = worst <= kOracleTolerance;
        all_ok = all_ok && ok;
        out << fmt::format("{},{},{},{},{},{},{:.3e},{}\n", rows, cols, depth, seed,
                           to_string(plan.strategy), taus.size(), worst, ok ? "PASS" : "FAIL");
      }
  out << (all_ok ? "# all cases passed\n" : "# some cases FAILED\n");
  return all_ok ? kSuccess : kNumericalFailure;
}

void add_circuit_source(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--circuit", cfg.circuit_path, "Circuit file");
  sub->add_option("--rows", cfg.rows, "Lattice rows (generator)");
  sub->add_option("--cols", cfg.cols, "Lattice columns (generator)");
  sub->add_option("--depth", cfg.depth, "Clock cycles d of a (1+d+1) circuit (generator)");
  sub->add_option("--seed", cfg.seed, "Generator seed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PEPS quantum circuit simulator"};
  app.require_subcommand(1);
  RunConfig cfg;
  EstimateArgs est;
  VerifyArgs ver;

  auto* gen = app.add_subcommand("generate", "Write a random circuit in the text format");
  add_circuit_source(gen, cfg);
  gen->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* amp = app.add_subcommand("amplitude", "Compute <tau|psi> for given or random bitstrings");
  add_circuit_source(amp, cfg);
  amp->add_option("--tau", cfg.taus, "Row-major bitstring (repeatable)");
  amp->add_option("--random-amplitudes", cfg.random_amplitudes, "Number of random bitstrings");
  amp->add_option("--tau-seed", cfg.tau_seed, "Seed for random bitstrings (default --seed)");
  amp->add_option("--strategy", cfg.strategy, "auto|generic|even|odd");
  amp->add_option("--memory-budget", cfg.memory_budget, "Bytes, e.g. 8GiB");
  amp->add_flag("--verify-oracle", cfg.verify_oracle, "Compare against the state-vector oracle");
  amp->add_option("-o,--output", cfg.output, "Output CSV (default stdout)");

  auto* estimate = app.add_subcommand("estimate", "Closed-form space/time costs");
  estimate->add_option("rows", est.rows, "Lattice rows");
  estimate->add_option("cols", est.cols, "Lattice columns");
  estimate->add_option("depth", est.depth, "Clock cycles d");
  estimate->add_option("--bristlecone", est.bristlecone, "Bristlecone-72 estimate at this depth");
  estimate->add_option("--sweep", est.sweep, "Vary rows|square|depth over --from..--to");
  estimate->add_option("--from", est.from, "Sweep start");
  estimate->add_option("--to", est.to, "Sweep end (inclusive)");
  estimate->add_option("--strategy", cfg.strategy, "auto|generic|even|odd|bristlecone");
  estimate->add_option("--memory-budget", cfg.memory_budget, "Bytes, e.g. 8GiB");
  estimate->add_option("-o,--output", cfg.output, "Output CSV (default stdout)");

  auto* sample = app.add_subcommand("sample", "Porter-Thomas statistics or sequential measurement");
  add_circuit_source(sample, cfg);
  sample->add_option("--porter-thomas", cfg.porter_thomas, "Number of random bitstrings");
  sample->add_option("--tau-seed", cfg.tau_seed, "Seed for random bitstrings (default --seed)");
  sample->add_option("--records", cfg.records, "Also write amplitude records here");
  sample->add_flag("--measure-all", cfg.measure_all, "Measure every qubit in row-major order");
  sample->add_option("--shots", cfg.shots, "Repetitions of --measure-all");
  sample->add_option("--measure-seed", cfg.measure_seed, "Measurement seed");
  sample->add_option("--strategy", cfg.strategy, "auto|generic|even|odd");
  sample->add_option("--memory-budget", cfg.memory_budget, "Bytes, e.g. 8GiB");
  sample->add_option("-o,--output", cfg.output, "Output CSV (default stdout)");

  auto* verify = app.add_subcommand("verify", "PEPS vs state-vector oracle over a circuit grid");
  verify->add_flag("--full", ver.full, "Full grid: 6 shapes x depths {4,8,16} x 3 seeds");
  verify->add_option("--taus", ver.taus, "Bitstrings per circuit");
  verify->add_option("--memory-budget", cfg.memory_budget, "Bytes, e.g. 8GiB");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (*gen) return cmd_generate(cfg, out);
    if (*amp) return cmd_amplitude(cfg, out);
    if (*estimate) return cmd_estimate(cfg, est, out);
    if (*sample) return cmd_sample(cfg, out);
    if (*verify) return cmd_verify(cfg, ver, out);
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kBudgetRefusal;
  } catch (const GuardExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kBudgetRefusal;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::bad_alloc&) {
    err << "refused: out of memory\n";
    return kBudgetRefusal;
  }
  return kConfigError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"peps"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace peps::cli
