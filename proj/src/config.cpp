// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "fc/errors.hpp"

namespace fc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return true;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError(fmt::format("key '{}': '{}' is not a valid number", key, text));
  return value;
}

std::string format_double(double x) { return fmt::format("{}", x); }

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + f(xs[i]);
  return out;
}

}  // namespace

Config Config::parse(std::string_view text, std::string_view origin) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", origin, number));
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(fmt::format("{}:{}: invalid key '{}'", origin, number, key));
    if (value.empty()) throw ConfigError(fmt::format("{}:{}: key '{}' has no value", origin, number, key));
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'");
  values_[key] = trim(value);
}

std::string Config::raw(const std::string& key) const { return values_.at(key); }

void Config::record(const std::string& key, const std::string& value) const { consulted_[key] = value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const std::string v = has(key) ? raw(key) : fallback;
  record(key, v);
  return v;
}

std::string Config::get_choice(const std::string& key, const std::string& fallback,
                               const std::set<std::string>& allowed) const {
  const std::string v = get_string(key, fallback);
  if (!allowed.count(v)) {
    std::string options;
    for (const auto& a : allowed) options += (options.empty() ? "" : ", ") + a;
    throw ConfigError(fmt::format("key '{}': '{}' is not one of {}", key, v, options));
  }
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  const double v = has(key) ? parse_number<double>(key, raw(key)) : fallback;
  record(key, format_double(v));
  return v;
}

int Config::get_int(const std::string& key, int fallback) const {
  const int v = has(key) ? parse_number<int>(key, raw(key)) : fallback;
  record(key, std::to_string(v));
  return v;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const std::uint64_t v = has(key) ? parse_number<std::uint64_t>(key, raw(key)) : fallback;
  record(key, std::to_string(v));
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  bool v = fallback;
  if (has(key)) {
    const std::string s = raw(key);
    if (s == "true" || s == "yes" || s == "1" || s == "on") v = true;
    else if (s == "false" || s == "no" || s == "0" || s == "off") v = false;
    else throw ConfigError(fmt::format("key '{}': '{}' is not a boolean", key, s));
  }
  record(key, v ? "true" : "false");
  return v;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  std::vector<double> v = fallback;
  if (has(key)) {
    v.clear();
    for (const auto& item : split_list(raw(key))) v.push_back(parse_number<double>(key, item));
  }
  record(key, join(v, format_double));
  return v;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) const {
  std::vector<int> v = fallback;
  if (has(key)) {
    v.clear();
    for (const auto& item : split_list(raw(key))) v.push_back(parse_number<int>(key, item));
  }
  record(key, join(v, [](int x) { return std::to_string(x); }));
  return v;
}

void Config::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_)
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "'");
}

std::string Config::resolved() const {
  std::string out;
  for (const auto& [key, value] : consulted_) out += key + " = " + value + "\n";
  return out;
}

}  // namespace fc
