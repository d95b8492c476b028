// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peps/error.hpp"

namespace peps {

using BigInt = boost::multiprecision::cpp_int;

/// Bytes per stored element (complex double).
inline constexpr unsigned kBytesPerElement = 16;
inline constexpr std::uint64_t kDefaultBudgetBytes = std::uint64_t{8} << 30;

enum class Strategy {
  GenericRows,  ///< row (or column) sweep, any rectangle
  SquareEven,   ///< four m x m blocks, L = 2m
  SquareOdd,    ///< (m+1)xm, (m+1)x(m+1), mxm, mx(m+1) blocks, L = 2m+1
  Bristlecone,  ///< cost estimate only: fixed rank-11 largest tensor
};

/// Which lattice side the generic sweep's boundary spans: Rows gives a
/// boundary of length L_v (the sweep moves column by column).
enum class Orientation { Rows, Columns };

std::string to_string(Strategy s);
std::string to_string(Orientation o);
/// Accepts generic|rows|even|odd|bristlecone and the to_string names.
Strategy parse_strategy(const std::string& name);

/// Closed-form space/time prediction. All counts are exact.
struct CostReport {
  Strategy strategy = Strategy::GenericRows;
  Orientation orientation = Orientation::Rows;
  BigInt space_elements;
  BigInt space_bytes;  ///< 16 * space_elements
  BigInt time_ops;     ///< multiply-add count; 0 when no formula exists
  std::string formula;

  std::string summary() const;
};

/// Whether `strategy` can contract an rows x cols network.
bool applicable(Strategy strategy, int rows, int cols);

/// Cost for bond dimension 2^ceil(depth/8).
CostReport estimate_cost(int rows, int cols, int depth, Strategy strategy);

/// Same formulas with an explicit bond dimension chi, for networks whose
/// bonds are not powers of two.
CostReport estimate_cost_for_bond(int rows, int cols, const BigInt& chi, Strategy strategy);

struct ContractionPlan {
  Strategy strategy = Strategy::GenericRows;
  Orientation orientation = Orientation::Rows;
  CostReport cost;
};

/// Raised when no strategy fits the memory budget; carries the cheapest
/// (smallest-space) prediction.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(CostReport report, std::uint64_t budget_bytes);
  const CostReport& report() const noexcept { return report_; }
  std::uint64_t budget_bytes() const noexcept { return budget_; }

 private:
  CostReport report_;
  std::uint64_t budget_;
};

/// Among applicable strategies whose predicted bytes fit `budget_bytes`,
/// picks minimal predicted time; square strategies win ties.
ContractionPlan plan_contraction(int rows, int cols, int depth, std::uint64_t budget_bytes);
ContractionPlan plan_for_bond(int rows, int cols, const BigInt& chi, std::uint64_t budget_bytes);

/// Binary units, e.g. "32 TiB", "0.5 PiB". The unit is the largest one the
/// value reaches at least half of.
std::string format_bytes(const BigInt& bytes);

/// Parses "123", "8GiB", "1.5T", "512MB". Bare K/M/G/T/P and *iB are binary;
/// KB/MB/GB/TB/PB are decimal. Throws ShapeError on bad input.
std::uint64_t parse_byte_size(const std::string& text);

/// Shared byte budget with atomic reserve/release.
class MemoryBudget {
 public:
  explicit MemoryBudget(std::uint64_t capacity_bytes) : capacity_(capacity_bytes) {}

  std::uint64_t capacity() const noexcept { return capacity_; }
  std::uint64_t reserved() const noexcept { return reserved_.load(); }

  bool try_reserve(std::uint64_t bytes);
  void release(std::uint64_t bytes);

  /// Holds a reservation until destruction.
  class Reservation {
   public:
    Reservation() = default;
    Reservation(MemoryBudget* budget, std::uint64_t bytes) : budget_(budget), bytes_(bytes) {}
    Reservation(Reservation&& other) noexcept
        : budget_(std::exchange(other.budget_, nullptr)), bytes_(other.bytes_) {}
    Reservation& operator=(Reservation&& other) noexcept;
    Reservation(const Reservation&) = delete;
    Reservation& operator=(const Reservation&) = delete;
    ~Reservation();

   private:
    MemoryBudget* budget_ = nullptr;
    std::uint64_t bytes_ = 0;
  };

  /// Throws BudgetExceeded with `report` when the bytes do not fit.
  Reservation reserve(const CostReport& report);

 private:
  std::uint64_t capacity_;
  std::atomic<std::uint64_t> reserved_{0};
};

}  // namespace peps
