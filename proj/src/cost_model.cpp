// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/cost_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>

namespace peps {

namespace {

BigInt power(const BigInt& base, int exponent) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

CostReport make_report(Strategy strategy, BigInt space, BigInt time, std::string formula) {
  CostReport r;
  r.strategy = strategy;
  r.space_elements = std::move(space);
  r.space_bytes = r.space_elements * kBytesPerElement;
  r.time_ops = std::move(time);
  r.formula = std::move(formula);
  return r;
}

}  // namespace

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::GenericRows: return "GenericRows";
    case Strategy::SquareEven: return "SquareEven";
    case Strategy::SquareOdd: return "SquareOdd";
    case Strategy::Bristlecone: return "Bristlecone";
  }
  return "?";
}

std::string to_string(Orientation o) { return o == Orientation::Rows ? "rows" : "columns"; }

Strategy parse_strategy(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "generic" || s == "rows" || s == "genericrows") return Strategy::GenericRows;
  if (s == "even" || s == "squareeven") return Strategy::SquareEven;
  if (s == "odd" || s == "squareodd") return Strategy::SquareOdd;
  if (s == "bristlecone") return Strategy::Bristlecone;
  throw ShapeError("unknown strategy '" + name + "'");
}

std::string CostReport::summary() const {
  std::string out = fmt::format("strategy={} space={} elements ({} bytes, {}) time={} ops [{}]",
                                to_string(strategy), space_elements.str(), space_bytes.str(),
                                format_bytes(space_bytes), time_ops.str(), formula);
  if (strategy == Strategy::GenericRows) out += " orientation=" + to_string(orientation);
  return out;
}

bool applicable(Strategy strategy, int rows, int cols) {
  if (rows < 1 || cols < 1) return false;
  switch (strategy) {
    case Strategy::GenericRows: return true;
    case Strategy::SquareEven: return rows == cols && rows % 2 == 0;
    case Strategy::SquareOdd: return rows == cols && rows % 2 == 1 && rows >= 3;
    case Strategy::Bristlecone: return true;
  }
  return false;
}

CostReport estimate_cost_for_bond(int rows, int cols, const BigInt& chi, Strategy strategy) {
  if (!applicable(strategy, rows, cols))
    throw ShapeError(fmt::format("strategy {} does not apply to a {}x{} lattice",
                                 to_string(strategy), rows, cols));
  if (chi < 1) throw ShapeError("bond dimension must be positive");
  switch (strategy) {
    case Strategy::GenericRows: {
      const int l = std::min(rows, cols);
      // The (L_h-2)(L_v-2) repetition count is clamped at zero for lattices
      // thinner than three sites.
      const BigInt repeats = BigInt(std::max(cols - 2, 0)) * std::max(rows - 2, 0);
      CostReport r = make_report(strategy, power(chi, l + 1), repeats * power(chi, l + 3),
                                 "generic: chi^(L+1), (Lh-2)(Lv-2) chi^(L+3)");
      r.orientation = rows <= cols ? Orientation::Rows : Orientation::Columns;
      return r;
    }
    case Strategy::SquareEven: {
      const int l = rows;
      return make_report(strategy, 2 * power(chi, l), 2 * power(chi, 3 * l / 2),
                         "square-even: 2 chi^sqrtN, 2 chi^(3 sqrtN/2)");
    }
    case Strategy::SquareOdd: {
      const int l = rows;
      return make_report(strategy, power(chi, l + 1) + power(chi, l),
                         (chi + 1) * power(chi, (3 * l - 1) / 2),
                         "square-odd: chi^(sqrtN+1) + chi^sqrtN, (chi+1) chi^((3 sqrtN-1)/2)");
    }
    case Strategy::Bristlecone:
      return make_report(strategy, 2 * power(chi, 11), 0,
                         "bristlecone-72: 2 chi^11 (two rank-11 tensors); no time formula");
  }
  throw ShapeError("unknown strategy");
}

CostReport estimate_cost(int rows, int cols, int depth, Strategy strategy) {
  if (depth < 0) throw ShapeError("depth must be non-negative");
  const int exponent = (depth + 7) / 8;
  return estimate_cost_for_bond(rows, cols, power(BigInt(2), exponent), strategy);
}

BudgetExceeded::BudgetExceeded(CostReport report, std::uint64_t budget_bytes)
    : Error(fmt::format("memory budget of {} bytes ({}) exceeded: {}", budget_bytes,
                        format_bytes(BigInt(budget_bytes)), report.summary())),
      report_(std::move(report)),
      budget_(budget_bytes) {}

ContractionPlan plan_for_bond(int rows, int cols, const BigInt& chi, std::uint64_t budget_bytes) {
  if (budget_bytes == 0) throw ShapeError("memory budget must be positive");
  std::vector<CostReport> candidates;
  for (Strategy s : {Strategy::SquareEven, Strategy::SquareOdd, Strategy::GenericRows})
    if (applicable(s, rows, cols)) candidates.push_back(estimate_cost_for_bond(rows, cols, chi, s));

  const CostReport* best = nullptr;
  for (const auto& c : candidates) {
    if (c.space_bytes > budget_bytes) continue;
    // Square strategies come first, so strict < keeps them on ties.
    if (!best || c.time_ops < best->time_ops) best = &c;
  }
  if (!best) {
    const auto smallest = std::min_element(
        candidates.begin(), candidates.end(),
        [](const CostReport& a, const CostReport& b) { return a.space_elements < b.space_elements; });
    throw BudgetExceeded(*smallest, budget_bytes);
  }
  return {best->strategy, best->orientation, *best};
}

ContractionPlan plan_contraction(int rows, int cols, int depth, std::uint64_t budget_bytes) {
  if (depth < 0) throw ShapeError("depth must be non-negative");
  return plan_for_bond(rows, cols, power(BigInt(2), (depth + 7) / 8), budget_bytes);
}

std::string format_bytes(const BigInt& bytes) {
  static constexpr const char* kUnits[] = {"B", "KiB", "MiB", "GiB", "TiB", "PiB", "EiB", "ZiB", "YiB"};
  const long double value = bytes.convert_to<long double>();
  std::size_t unit = 0;
  long double scaled = value;
  while (unit + 1 < std::size(kUnits) && scaled / 1024.0L >= 0.5L) {
    scaled /= 1024.0L;
    ++unit;
  }
  return fmt::format("{:.3g} {}", static_cast<double>(scaled), kUnits[unit]);
}

std::uint64_t parse_byte_size(const std::string& text) {
  std::size_t pos = 0;
  double number = 0.0;
  try {
    number = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ShapeError("invalid byte size '" + text + "'");
  }
  std::string suffix = text.substr(pos);
  std::erase_if(suffix, [](unsigned char c) { return std::isspace(c); });
  std::transform(suffix.begin(), suffix.end(), suffix.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  long double scale = 1.0L;
  if (!suffix.empty() && suffix != "B") {
    static constexpr char kPrefixes[] = "KMGTP";
    const char* found = std::strchr(kPrefixes, suffix[0]);
    if (!found || suffix[0] == '\0') throw ShapeError("invalid byte size suffix in '" + text + "'");
    const int power_index = static_cast<int>(found - kPrefixes) + 1;
    const std::string rest = suffix.substr(1);
    long double base;
    if (rest.empty() || rest == "IB" || rest == "I") {
      base = 1024.0L;
    } else if (rest == "B") {
      base = 1000.0L;
    } else {
      throw ShapeError("invalid byte size suffix in '" + text + "'");
    }
    scale = std::pow(base, power_index);
  }
  const long double bytes = static_cast<long double>(number) * scale;
  if (!(bytes > 0.0L) || bytes > 1.8e19L) throw ShapeError("byte size out of range: '" + text + "'");
  return static_cast<std::uint64_t>(bytes);
}

bool MemoryBudget::try_reserve(std::uint64_t bytes) {
  std::uint64_t current = reserved_.load();
  do {
    if (bytes > capacity_ || current > capacity_ - bytes) return false;
  } while (!reserved_.compare_exchange_weak(current, current + bytes));
  return true;
}

void MemoryBudget::release(std::uint64_t bytes) { reserved_.fetch_sub(bytes); }

MemoryBudget::Reservation& MemoryBudget::Reservation::operator=(Reservation&& other) noexcept {
  if (this != &other) {
    if (budget_) budget_->release(bytes_);
    budget_ = std::exchange(other.budget_, nullptr);
    bytes_ = other.bytes_;
  }
  return *this;
}

MemoryBudget::Reservation::~Reservation() {
  if (budget_) budget_->release(bytes_);
}

MemoryBudget::Reservation MemoryBudget::reserve(const CostReport& report) {
  if (report.space_bytes > capacity_) throw BudgetExceeded(report, capacity_);
  const auto bytes = report.space_bytes.convert_to<std::uint64_t>();
  if (!try_reserve(bytes)) throw BudgetExceeded(report, capacity_ - reserved());
  return Reservation(this, bytes);
}

}  // namespace peps
