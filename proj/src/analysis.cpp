// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include <Eigen/QR>

#include "fc/errors.hpp"

namespace fc {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string to_string(FitAbscissa a) {
  return a == FitAbscissa::inverse_active ? "inverse_active" : "inverse_length";
}

double ScalingFit::evaluate(double size) const {
  const double x = 1.0 / size;
  return a + x * (b + x * c);
}

ScalingFit fit_alpha_scaling(const std::vector<ScalingPoint>& points, FitAbscissa abscissa) {
  std::set<double> sizes;
  for (const auto& p : points) {
    if (!(p.size > 0) || !std::isfinite(p.alpha)) throw InvalidArgument("scaling points need positive sizes and finite alpha");
    sizes.insert(p.size);
  }
  if (sizes.size() < 3) throw InvalidArgument("quadratic fit needs at least three distinct sizes");

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = 1.0 / points[static_cast<std::size_t>(i)].size;
    design.row(i) << 1.0, x, x * x;
    y[i] = points[static_cast<std::size_t>(i)].alpha;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw NumericalError("scaling fit design matrix is rank deficient");
  const Eigen::Vector3d coef = qr.solve(y);

  ScalingFit fit;
  fit.points = points;
  fit.abscissa = abscissa;
  fit.a = coef[0];
  fit.b = coef[1];
  fit.c = coef[2];
  fit.extrapolated = fit.a;
  const Eigen::VectorXd r = y - design * coef;
  fit.residuals.assign(r.data(), r.data() + r.size());
  fit.residual_norm = r.norm();
  return fit;
}

std::size_t DistributionStats::coverage_index(double q) const {
  for (std::size_t n = 0; n < cumulative.size(); ++n)
    if (cumulative[n] >= q - 1e-12) return n + 1;
  return cumulative.size();
}

DistributionStats distribution_stats(const Vector& amplitudes) {
  DistributionStats s;
  s.probabilities.resize(static_cast<std::size_t>(amplitudes.size()));
  for (Eigen::Index k = 0; k < amplitudes.size(); ++k) s.probabilities[static_cast<std::size_t>(k)] = std::norm(amplitudes[k]);
  std::sort(s.probabilities.begin(), s.probabilities.end(), std::greater<>());

  s.cumulative.resize(s.probabilities.size());
  double acc = 0.0, sum_sq = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < s.probabilities.size(); ++i) {
    const double p = s.probabilities[i];
    const double n = static_cast<double>(i + 1);
    acc += p;
    s.cumulative[i] = acc;
    sum_sq += p * p;
    m1 += n * p;
    m2 += n * n * p;
  }
  s.s_p = -std::log(sum_sq);
  s.complexity = std::exp(s.s_p);
  s.sigma_n = std::sqrt(std::max(0.0, m2 - m1 * m1));
  s.beta = (s.sigma_n > 0 && s.s_p > 1e-12) ? std::log(s.sigma_n) / s.s_p : kNaN;
  for (std::size_t k = 0; k < s.coverage.size(); ++k) s.coverage[k] = s.coverage_index(s.coverage_levels[k]);

  const double c = std::min(s.complexity, static_cast<double>(s.cumulative.size()));
  const auto lo = static_cast<std::size_t>(std::floor(c));
  const double below = lo == 0 ? 0.0 : s.cumulative[lo - 1];
  const double above = lo < s.cumulative.size() ? s.cumulative[lo] : below;
  s.cumulative_at_complexity = below + (c - static_cast<double>(lo)) * (above - below);
  return s;
}

DistributionStats distribution_stats(const ManyBodyState& state) { return distribution_stats(state.amplitudes()); }

namespace {

// Linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + (pos - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
}

}  // namespace

Histogram make_histogram(const std::vector<double>& values, std::optional<double> width) {
  if (values.empty()) throw InvalidArgument("histogram of an empty sample");
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  Histogram h;
  h.lower = v.front();
  const double span = v.back() - v.front();
  double w = width.value_or(2.0 * (quantile(v, 0.75) - quantile(v, 0.25)) / std::cbrt(static_cast<double>(v.size())));
  if (width && !(*width > 0)) throw InvalidArgument("histogram bin width must be positive");
  if (!(w > 0) || span == 0.0) {
    h.width = span > 0 ? span : 1.0;
    h.counts.assign(1, v.size());
    return h;
  }
  h.width = w;
  const auto bins = static_cast<std::size_t>(std::floor(span / w)) + 1;
  h.counts.assign(bins, 0);
  for (double x : v) h.counts[std::min(bins - 1, static_cast<std::size_t>((x - h.lower) / w))]++;
  return h;
}

std::vector<BinStatistics> excited_state_statistics(const std::vector<RatioSample>& samples, std::size_t min_count,
                                                    std::optional<double> bin_width) {
  std::map<std::pair<std::string, double>, std::vector<double>> bins;
  for (const auto& s : samples) {
    auto& bin = bins[{s.label, s.coupling}];
    if (std::isfinite(s.ratio)) bin.push_back(s.ratio);
  }
  if (bins.empty()) throw InvalidArgument("no samples to bin");

  std::vector<BinStatistics> out;
  for (const auto& [key, values] : bins) {
    if (values.empty() || values.size() < min_count)
      throw InvalidArgument("bin '" + key.first + "' has " + std::to_string(values.size()) + " states, need " +
                            std::to_string(std::max<std::size_t>(min_count, 1)));
    BinStatistics b;
    b.label = key.first;
    b.coupling = key.second;
    b.count = values.size();
    double sum = 0.0;
    for (double x : values) sum += x;
    b.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double x : values) ss += (x - b.mean) * (x - b.mean);
    b.std = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    b.histogram = make_histogram(values, bin_width);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<BinStatistics> excited_state_statistics(const std::vector<ComplexityReport>& reports,
                                                    const std::vector<std::string>& labels, double coupling,
                                                    std::size_t min_count) {
  if (reports.size() != labels.size()) throw InvalidArgument("one label per report is required");
  std::vector<RatioSample> samples;
  samples.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) samples.push_back({labels[i], coupling, reports[i].alpha});
  return excited_state_statistics(samples, min_count);
}

}  // namespace fc
