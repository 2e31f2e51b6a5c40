// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Post-processing of complexity results: finite-size fits of α, the ranked
// probability distribution of a state, and excited-state ratio statistics.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fc/complexity.hpp"
#include "fc/fock.hpp"

namespace fc {

enum class FitAbscissa { inverse_active, inverse_length };

std::string to_string(FitAbscissa a);

struct ScalingPoint {
  double size;  // N_i or L, per the abscissa
  double alpha;
};

/// alpha(x) = a + b x + c x², x = 1/size.
struct ScalingFit {
  std::vector<ScalingPoint> points;
  FitAbscissa abscissa = FitAbscissa::inverse_active;
  double a = 0.0, b = 0.0, c = 0.0;
  double extrapolated = 0.0;  // alpha at x = 0, i.e. a
  std::vector<double> residuals;
  double residual_norm = 0.0;

  double evaluate(double size) const;
};

/// Least squares; needs at least three distinct sizes.
ScalingFit fit_alpha_scaling(const std::vector<ScalingPoint>& points,
                             FitAbscissa abscissa = FitAbscissa::inverse_active);

struct DistributionStats {
  std::vector<double> probabilities;  // descending
  std::vector<double> cumulative;
  double s_p = 0.0;
  double complexity = 1.0;  // exp(s_p)
  double sigma_n = 0.0;     // over the 1-based rank n
  double beta = 0.0;        // ln sigma_n / s_p, NaN when either vanishes
  std::array<double, 3> coverage_levels{0.5, 0.9, 0.99};
  std::array<std::size_t, 3> coverage{};
  /// Cumulative probability at the generally non-integer rank C, linear
  /// between neighboring ranks.
  double cumulative_at_complexity = 0.0;

  /// Smallest rank whose cumulative probability reaches q.
  std::size_t coverage_index(double q) const;
};

DistributionStats distribution_stats(const Vector& amplitudes);
DistributionStats distribution_stats(const ManyBodyState& state);

struct Histogram {
  double lower = 0.0;
  double width = 1.0;
  std::vector<std::size_t> counts;
};

/// Bin width 2 IQR n^(-1/3) unless `width` is given; a zero spread gives one bin.
Histogram make_histogram(const std::vector<double>& values, std::optional<double> width = std::nullopt);

struct RatioSample {
  std::string label;  // sector label
  double coupling;
  double ratio;
};

struct BinStatistics {
  std::string label;
  double coupling = 0.0;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  Histogram histogram;
};

/// Groups by (label, coupling) in sorted order. NaN ratios are skipped.
/// Throws InvalidArgument when a bin ends up with fewer than `min_count`.
std::vector<BinStatistics> excited_state_statistics(const std::vector<RatioSample>& samples,
                                                    std::size_t min_count = 10,
                                                    std::optional<double> bin_width = std::nullopt);

/// Ratios taken from each report's α.
std::vector<BinStatistics> excited_state_statistics(const std::vector<ComplexityReport>& reports,
                                                    const std::vector<std::string>& labels, double coupling,
                                                    std::size_t min_count = 10);

}  // namespace fc
