// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace peps {

/// KS distances below this are reported as Porter-Thomas-like.
inline constexpr double kChaoticKsThreshold = 0.05;

struct HistogramOptions {
  std::size_t bins = 50;
  double x_max = 8.0;  ///< bins are equal-width on [0, x_max]
};

struct HistogramBin {
  double x = 0.0;  ///< bin centre
  std::size_t count = 0;
  double empirical_log_density = 0.0;  ///< log10(count / (n * width)); -inf when empty
  double theory_log_density = 0.0;     ///< log10(exp(-x))
};

/// Scaled probabilities x = D * p compared against the Exp(1) law.
struct DistributionReport {
  std::vector<double> scaled;  ///< sorted ascending; the empirical CDF at scaled[i] is (i+1)/n
  double ks_distance = 0.0;
  /// 1.63 / sqrt(n), the 1% critical value of the one-sample KS statistic.
  double ks_critical_99 = 0.0;
  bool chaotic = false;  ///< ks_distance < kChaoticKsThreshold
  std::vector<HistogramBin> histogram;
};

/// One-sample KS distance of `samples` against 1 - exp(-x).
double ks_distance_exponential(std::span<const double> samples);

/// Throws ShapeError on an empty sample, negative probabilities or D < 2.
DistributionReport porter_thomas_report(std::span<const double> probabilities, double dimension,
                                        const HistogramOptions& options = {});

/// Columns: x, empirical_log_density, theory_log_density. Empty bins leave
/// the empirical column blank.
std::string histogram_csv(const DistributionReport& report);

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 0.0;
};

/// Pearson goodness-of-fit of `observed` counts against `expected`
/// probabilities. Categories with expected count below `min_expected` are
/// pooled into a single category.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected, double min_expected = 5.0);

}  // namespace peps
