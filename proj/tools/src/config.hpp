// Copyright 2026 The entis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTIS_TOOLS_CONFIG_HPP
#define ENTIS_TOOLS_CONFIG_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "entis/measures.hpp"

namespace entis::cli {

/**
 * Flat YAML mapping of scalars and lists. Every accessor marks its key as used; reject_unused()
 * then turns leftovers into "unknown key" errors. All errors carry `file:line:` prefixes and are
 * InvalidArgument, which the CLI maps to exit code 2.
 */
class Config {
 public:
  static Config load(const std::string& path);
  static Config parse(const std::string& text, const std::string& name = "<config>");

  Config(Config&&) noexcept;
  Config& operator=(Config&&) noexcept;
  ~Config();

  [[nodiscard]] bool has(const std::string& key) const;

  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  std::int64_t integer(const std::string& key, std::int64_t fallback);
  std::optional<std::uint64_t> unsigned_integer(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  bool flag(const std::string& key, bool fallback);
  std::vector<double> numbers(const std::string& key);
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback);
  std::vector<std::string> strings(const std::string& key);
  /// List of equal-length lists, or a flat list read as a single column.
  Matrix matrix(const std::string& key);

  /// `file:line: message` for an existing key, `file: message` otherwise.
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

  void reject_unused() const;

 private:
  struct Impl;
  explicit Config(std::unique_ptr<Impl> impl);

  std::unique_ptr<Impl> impl_;
};

}  // namespace entis::cli

#endif
