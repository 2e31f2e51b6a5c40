// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Minimal SVG line plots for experiment outputs.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fc {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers_only = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  /// Written into a leading XML comment, with "--" broken up.
  std::string metadata;
};

/// Non-finite points are dropped.
std::string render_svg(const Plot& plot);
void write_svg(const std::filesystem::path& path, const Plot& plot);

}  // namespace fc
