// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "peps/statistics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "peps/error.hpp"

namespace peps {

double ks_distance_exponential(std::span<const double> samples) {
  if (samples.empty()) throw ShapeError("KS distance of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = -std::expm1(-sorted[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, above - cdf, cdf - below});
  }
  return d;
}

DistributionReport porter_thomas_report(std::span<const double> probabilities, double dimension,
                                        const HistogramOptions& options) {
  if (probabilities.empty()) throw ShapeError("empty probability sample");
  if (dimension < 2.0) throw ShapeError("Hilbert-space dimension must be at least 2");
  if (options.bins == 0 || options.x_max <= 0.0) throw ShapeError("invalid histogram options");

  DistributionReport report;
  report.scaled.reserve(probabilities.size());
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ShapeError("probabilities must be non-negative");
    report.scaled.push_back(dimension * p);
  }
  std::sort(report.scaled.begin(), report.scaled.end());
  report.ks_distance = ks_distance_exponential(report.scaled);
  const double n = static_cast<double>(report.scaled.size());
  report.ks_critical_99 = 1.63 / std::sqrt(n);
  report.chaotic = report.ks_distance < kChaoticKsThreshold;

  const double width = options.x_max / static_cast<double>(options.bins);
  report.histogram.resize(options.bins);
  for (std::size_t b = 0; b < options.bins; ++b)
    report.histogram[b].x = (static_cast<double>(b) + 0.5) * width;
  for (double x : report.scaled) {
    if (x >= options.x_max) continue;
    ++report.histogram[static_cast<std::size_t>(x / width)].count;
  }
  for (auto& bin : report.histogram) {
    bin.empirical_log_density = bin.count == 0
                                    ? -std::numeric_limits<double>::infinity()
                                    : std::log10(static_cast<double>(bin.count) / (n * width));
    bin.theory_log_density = -bin.x / std::log(10.0);
  }
  return report;
}

std::string histogram_csv(const DistributionReport& report) {
  std::string out = "x,empirical_log_density,theory_log_density\n";
  for (const auto& bin : report.histogram) {
    if (bin.count == 0)
      out += fmt::format("{},,{}\n", bin.x, bin.theory_log_density);
    else
      out += fmt::format("{},{},{}\n", bin.x, bin.empirical_log_density, bin.theory_log_density);
  }
  return out;
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected, double min_expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw ShapeError("observed and expected must have the same nonzero length");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(),
                                                           std::uint64_t{0}));
  const double norm = std::accumulate(expected.begin(), expected.end(), 0.0);
  if (total <= 0.0 || norm <= 0.0) throw ShapeError("chi-square test needs counts and probabilities");

  ChiSquareResult result;
  int categories = 0;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = total * expected[i] / norm;
    const double o = static_cast<double>(observed[i]);
    if (e < min_expected) {
      pooled_obs += o;
      pooled_exp += e;
      continue;
    }
    result.statistic += (o - e) * (o - e) / e;
    ++categories;
  }
  if (pooled_exp == 0.0 && pooled_obs > 0.0) {
    // Counts in categories with zero probability.
    result.statistic = std::numeric_limits<double>::infinity();
    result.degrees_of_freedom = std::max(categories - 1, 1);
    result.p_value = 0.0;
    return result;
  }
  if (pooled_exp > 0.0) {
    result.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++categories;
  }
  result.degrees_of_freedom = categories - 1;
  if (result.degrees_of_freedom < 1) {
    result.p_value = 1.0;
    return result;
  }
  boost::math::chi_squared dist(result.degrees_of_freedom);
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  return result;
}

}  // namespace peps
