// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/circuit.hpp"

#include <fmt/format.h>

#include <charconv>
#include <set>
#include <sstream>

#include "peps/error.hpp"
#include "peps/rng.hpp"

namespace peps {

namespace {

std::string site_string(Site s) { return fmt::format("({},{})", s.row, s.col); }

bool in_lattice(const Circuit& c, Site s) {
  return s.row >= 0 && s.row < c.rows && s.col >= 0 && s.col < c.cols;
}

// Checks one layer; reports the problem as a message, empty when valid.
std::string layer_problem(const Circuit& c, const Layer& layer) {
  std::set<Site> used;
  for (const Gate& g : layer.gates) {
    std::vector<Site> sites{g.a};
    if (g.two_qubit()) sites.push_back(g.b);
    for (Site s : sites) {
      if (!in_lattice(c, s)) return "site " + site_string(s) + " outside lattice";
      if (!used.insert(s).second) return "site " + site_string(s) + " used twice in one layer";
    }
    if (g.two_qubit() && !adjacent(g.a, g.b))
      return "two-qubit gate on non-adjacent sites " + site_string(g.a) + " " +
             site_string(g.b);
    if (g.kind == GateKind::Custom1 && !is_unitary(g.m1, 2))
      return "u1 matrix is not unitary";
    if (g.kind == GateKind::Custom2 && !is_unitary(g.m2, 4))
      return "u2 matrix is not unitary";
  }
  return {};
}

}  // namespace

Matrix2 Gate::matrix1() const {
  switch (kind) {
    case GateKind::H: return gates::hadamard();
    case GateKind::T: return gates::t();
    case GateKind::XHalf: return gates::x_half();
    case GateKind::YHalf: return gates::y_half();
    case GateKind::Custom1: return m1;
    default: throw ShapeError("not a single-qubit gate");
  }
}

Matrix4 Gate::matrix2() const {
  switch (kind) {
    case GateKind::CZ: return gates::cz();
    case GateKind::Custom2: return m2;
    default: throw ShapeError("not a two-qubit gate");
  }
}

void Circuit::validate() const {
  if (rows < 1 || cols < 1) throw ShapeError("lattice dimensions must be positive");
  for (std::size_t i = 0; i < layers.size(); ++i)
    if (auto problem = layer_problem(*this, layers[i]); !problem.empty())
      throw ShapeError("layer " + std::to_string(i) + ": " + problem);
}

std::vector<std::pair<Site, Site>> cz_layout(int rows, int cols, int t) {
  if (t < 0) throw ShapeError("clock cycle must be non-negative");
  const int config = t % 8;
  const int cls = config / 2;
  std::vector<std::pair<Site, Site>> pairs;
  if (config % 2 == 0) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j + 1 < cols; ++j)
        if (2 * (j % 2) + i % 2 == cls) pairs.push_back({{i, j}, {i, j + 1}});
  } else {
    for (int i = 0; i + 1 < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (2 * (i % 2) + j % 2 == cls) pairs.push_back({{i, j}, {i + 1, j}});
  }
  return pairs;
}

Circuit generate_rqc(int rows, int cols, int depth, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw ShapeError("lattice dimensions must be positive");
  if (depth < 0) throw ShapeError("depth must be non-negative");
  const int n = rows * cols;
  Circuit c;
  c.rows = rows;
  c.cols = cols;
  c.seed = seed;
  c.generator = kGeneratorName;

  Layer hadamards;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) hadamards.gates.push_back(Gate::single(GateKind::H, {i, j}));
  c.layers.push_back(hadamards);

  std::vector<std::mt19937_64> streams;
  streams.reserve(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) streams.push_back(make_stream(seed, static_cast<std::uint64_t>(q)));

  std::vector<std::optional<GateKind>> previous(static_cast<std::size_t>(n));
  std::vector<bool> cz_before(static_cast<std::size_t>(n), false);
  constexpr GateKind kChoices[] = {GateKind::T, GateKind::XHalf, GateKind::YHalf};

  for (int t = 1; t <= depth; ++t) {
    Layer layer;
    std::vector<bool> cz_now(static_cast<std::size_t>(n), false);
    for (auto [a, b] : cz_layout(rows, cols, t - 1)) {
      layer.gates.push_back(Gate::cz(a, b));
      cz_now[static_cast<std::size_t>(a.row * cols + a.col)] = true;
      cz_now[static_cast<std::size_t>(b.row * cols + b.col)] = true;
    }
    for (int q = 0; q < n; ++q) {
      const auto qi = static_cast<std::size_t>(q);
      if (cz_now[qi] || !cz_before[qi]) continue;
      GateKind kind = GateKind::T;
      if (previous[qi]) {
        GateKind options[2];
        int k = 0;
        for (GateKind g : kChoices)
          if (g != *previous[qi]) options[k++] = g;
        kind = options[uniform_below(streams[qi], 2)];
      }
      previous[qi] = kind;
      layer.gates.push_back(Gate::single(kind, {q / cols, q % cols}));
    }
    cz_before = cz_now;
    c.layers.push_back(std::move(layer));
  }
  c.layers.push_back(hadamards);
  return c;
}

std::string serialize_circuit(const Circuit& circuit) {
  std::string out = fmt::format("lattice {} {}\n", circuit.rows, circuit.cols);
  if (circuit.seed) out += fmt::format("seed {}\n", *circuit.seed);
  if (!circuit.generator.empty()) out += fmt::format("generator {}\n", circuit.generator);
  for (const Layer& layer : circuit.layers) {
    out += "layer\n";
    for (const Gate& g : layer.gates) {
      switch (g.kind) {
        case GateKind::H: out += fmt::format("h {} {}\n", g.a.row, g.a.col); break;
        case GateKind::T: out += fmt::format("t {} {}\n", g.a.row, g.a.col); break;
        case GateKind::XHalf: out += fmt::format("x2 {} {}\n", g.a.row, g.a.col); break;
        case GateKind::YHalf: out += fmt::format("y2 {} {}\n", g.a.row, g.a.col); break;
        case GateKind::CZ:
          out += fmt::format("cz {} {} {} {}\n", g.a.row, g.a.col, g.b.row, g.b.col);
          break;
        case GateKind::Custom1:
          out += fmt::format("u1 {} {}", g.a.row, g.a.col);
          for (complex x : g.m1) out += fmt::format(" {} {}", x.real(), x.imag());
          out += "\n";
          break;
        case GateKind::Custom2:
          out += fmt::format("u2 {} {} {} {}", g.a.row, g.a.col, g.b.row, g.b.col);
          for (complex x : g.m2) out += fmt::format(" {} {}", x.real(), x.imag());
          out += "\n";
          break;
      }
    }
  }
  return out;
}

namespace {

class LineParser {
 public:
  LineParser(std::size_t line, std::vector<std::string> tokens)
      : line_(line), tokens_(std::move(tokens)) {}

  void expect_arity(std::size_t n) const {
    if (tokens_.size() != n + 1)
      throw ParseError(line_, fmt::format("'{}' expects {} arguments, got {}", tokens_[0], n,
                                          tokens_.size() - 1));
  }

  template <class T>
  T number(std::size_t i) const {
    const std::string& s = tokens_.at(i);
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError(line_, "invalid number '" + s + "'");
    return value;
  }

  Site site(std::size_t i) const { return {number<int>(i), number<int>(i + 1)}; }

  complex entry(std::size_t i) const { return {number<double>(i), number<double>(i + 1)}; }

 private:
  std::size_t line_;
  std::vector<std::string> tokens_;
};

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_lattice = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;
    const std::string& cmd = tokens[0];
    LineParser p(line_no, tokens);

    if (!have_lattice) {
      if (cmd != "lattice") throw ParseError(line_no, "expected 'lattice <rows> <cols>'");
      p.expect_arity(2);
      c.rows = p.number<int>(1);
      c.cols = p.number<int>(2);
      if (c.rows < 1 || c.cols < 1) throw ParseError(line_no, "lattice dimensions must be positive");
      have_lattice = true;
      continue;
    }
    if (cmd == "seed") {
      p.expect_arity(1);
      c.seed = p.number<std::uint64_t>(1);
      continue;
    }
    if (cmd == "generator") {
      p.expect_arity(1);
      c.generator = tokens[1];
      continue;
    }
    if (cmd == "layer") {
      p.expect_arity(0);
      c.layers.emplace_back();
      continue;
    }
    if (c.layers.empty()) throw ParseError(line_no, "gate before the first 'layer'");

    Gate g;
    if (cmd == "h" || cmd == "t" || cmd == "x2" || cmd == "y2") {
      p.expect_arity(2);
      const GateKind kind = cmd == "h" ? GateKind::H
                            : cmd == "t" ? GateKind::T
                            : cmd == "x2" ? GateKind::XHalf
                                          : GateKind::YHalf;
      g = Gate::single(kind, p.site(1));
    } else if (cmd == "cz") {
      p.expect_arity(4);
      g = Gate::cz(p.site(1), p.site(3));
    } else if (cmd == "u1") {
      p.expect_arity(2 + 8);
      Matrix2 m;
      for (std::size_t k = 0; k < 4; ++k) m[k] = p.entry(3 + 2 * k);
      g = Gate::custom(m, p.site(1));
    } else if (cmd == "u2") {
      p.expect_arity(4 + 32);
      Matrix4 m;
      for (std::size_t k = 0; k < 16; ++k) m[k] = p.entry(5 + 2 * k);
      g = Gate::custom(m, p.site(1), p.site(3));
    } else {
      throw ParseError(line_no, "unknown directive '" + cmd + "'");
    }

    Layer& layer = c.layers.back();
    layer.gates.push_back(g);
    if (auto problem = layer_problem(c, layer); !problem.empty()) throw ParseError(line_no, problem);
  }
  if (!have_lattice) throw ParseError(line_no, "missing 'lattice' line");
  return c;
}

std::size_t predicted_bond_dimension(const Circuit& circuit) {
  circuit.validate();
  const auto rows = static_cast<std::size_t>(circuit.rows);
  const auto cols = static_cast<std::size_t>(circuit.cols);
  std::vector<std::size_t> horizontal(rows * cols, 1), vertical(rows * cols, 1);
  std::size_t chi = 1;
  for (const Layer& layer : circuit.layers)
    for (const Gate& g : layer.gates) {
      if (!g.two_qubit()) continue;
      const std::size_t rank = g.kind == GateKind::CZ ? 2 : factorize_two_qubit(g.m2).rank;
      const Site first = std::min(g.a, g.b);
      auto& bonds = g.a.row == g.b.row ? horizontal : vertical;
      auto& bond = bonds[static_cast<std::size_t>(first.row) * cols + static_cast<std::size_t>(first.col)];
      bond *= rank;
      chi = std::max(chi, bond);
    }
  return chi;
}

void apply_circuit(PepsState& state, const Circuit& circuit, const TensorLimits& limits) {
  if (state.rows() != circuit.rows || state.cols() != circuit.cols)
    throw ShapeError("circuit lattice does not match state");
  for (const Layer& layer : circuit.layers)
    for (const Gate& g : layer.gates) {
      if (g.two_qubit())
        state.apply_two_qubit(g.matrix2(), g.a, g.b, limits);
      else
        state.apply_single_qubit(g.matrix1(), g.a);
    }
}

PepsState evolve(const Circuit& circuit, const TensorLimits& limits) {
  PepsState state(circuit.rows, circuit.cols);
  apply_circuit(state, circuit, limits);
  return state;
}

}  // namespace peps
