// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Flat `key = value` experiment configuration.
//
//   # comment
//   model = hubbard
//   sizes = 4, 6, 8
//
// Later assignments replace earlier ones, so overrides are appended text.
// Every key read through a getter is recorded with its effective value,
// defaults included, and resolved() prints that record.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fc {

class Config {
 public:
  /// Throws ConfigError naming the line on malformed input.
  static Config parse(std::string_view text, std::string_view origin = "<config>");
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string get_choice(const std::string& key, const std::string& fallback,
                         const std::set<std::string>& allowed) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;

  /// Keys not in `known` are a ConfigError (typos should not run silently).
  void require_known(const std::set<std::string>& known) const;

  /// Sorted `key = value` lines of every consulted key.
  std::string resolved() const;

 private:
  std::string raw(const std::string& key) const;
  void record(const std::string& key, const std::string& value) const;

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> consulted_;
};

}  // namespace fc
