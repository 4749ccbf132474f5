#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/symbols.hpp"

namespace weyllab {

inline constexpr std::array<std::string_view, 11> kCommands = {
    "weyl",      "kernel",     "rescale-scan", "log-fit",        "green-fit", "limit-kernel",
    "osc-decay", "admissible", "disintegration", "link-check", "suite"};

inline bool is_command(std::string_view name) {
  return std::find(kCommands.begin(), kCommands.end(), name) != kCommands.end();
}

/// Line-oriented experiment record:
///
///   command = weyl
///   symbol = poly: x1^2+x2^2
///   L = 25
///
/// Blank lines and lines starting with '#' are ignored. Entry order is kept,
/// so serialize() reproduces a canonical file byte for byte.
class ExperimentConfig {
 public:
  ExperimentConfig() = default;
  explicit ExperimentConfig(std::string command) : command_(std::move(command)) {
    if (!is_command(command_)) fail(ErrorCode::ParseError, "config: unknown command '" + command_ + "'");
  }

  static ExperimentConfig parse(std::string_view text) {
    ExperimentConfig config;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      const auto line = detail::trim(text.substr(start, end - start));
      start = end + 1;
      ++line_no;
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        fail(ErrorCode::ParseError, "config: line " + std::to_string(line_no) + " is not 'key = value'");
      }
      const std::string key(detail::trim(line.substr(0, eq)));
      const std::string value(detail::trim(line.substr(eq + 1)));
      if (key.empty()) fail(ErrorCode::ParseError, "config: empty key at line " + std::to_string(line_no));
      if (key == "command") {
        if (!is_command(value)) fail(ErrorCode::ParseError, "config: unknown command '" + value + "'");
        config.command_ = value;
      } else {
        config.set(key, value);
      }
    }
    return config;
  }

  std::string serialize() const {
    std::ostringstream out;
    if (!command_.empty()) out << "command = " << command_ << "\n";
    for (const auto& [key, value] : entries_) out << key << " = " << value << "\n";
    return out.str();
  }

  const std::string& command() const { return command_; }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::optional<std::string> get(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
      if (k == key) {
        v = value;
        return;
      }
    }
    entries_.emplace_back(key, value);
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace weyllab
