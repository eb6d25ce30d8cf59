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

#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>
#include <utility>

#include "entis/errors.hpp"

namespace entis::cli {

struct Config::Impl {
  std::string name;
  YAML::Node root;
  mutable std::set<std::string> used;

  [[nodiscard]] std::string where(const YAML::Node& node) const {
    return name + ":" + std::to_string(node.Mark().line + 1) + ": ";
  }
};

namespace {

[[noreturn]] void raise(const std::string& message) { throw Error(ErrorKind::kInvalidArgument, message); }

}  // namespace

Config::Config(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Config::Config(Config&&) noexcept = default;
Config& Config::operator=(Config&&) noexcept = default;
Config::~Config() = default;

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(path + ": cannot open config file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

Config Config::parse(const std::string& text, const std::string& name) {
  auto impl = std::make_unique<Impl>();
  impl->name = name;
  try {
    impl->root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    raise(name + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (impl->root.IsNull()) {
    impl->root = YAML::Node(YAML::NodeType::Map);
  }
  if (!impl->root.IsMap()) {
    raise(name + ": config must be a mapping of keys to values");
  }
  for (const auto& entry : impl->root) {
    if (!entry.first.IsScalar()) {
      raise(impl->where(entry.first) + "keys must be plain names");
    }
    if (entry.second.IsMap()) {
      raise(impl->where(entry.second) + "nested mappings are not supported (key '" + entry.first.as<std::string>() +
            "')");
    }
  }
  return Config(std::move(impl));
}

bool Config::has(const std::string& key) const { return static_cast<bool>(std::as_const(impl_->root)[key]); }

void Config::fail(const std::string& key, const std::string& message) const {
  const auto node = std::as_const(impl_->root)[key];
  if (node) {
    raise(impl_->where(node) + "'" + key + "': " + message);
  }
  raise(impl_->name + ": '" + key + "': " + message);
}

namespace {

template <typename T>
T scalar_as(const Config& cfg, const YAML::Node& node, const std::string& key, const char* kind) {
  if (!node.IsScalar()) {
    cfg.fail(key, std::string("expected ") + kind);
  }
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    cfg.fail(key, std::string("expected ") + kind + ", got '" + node.Scalar() + "'");
  }
}

}  // namespace

double Config::number(const std::string& key) {
  if (!has(key)) {
    fail(key, "required key is missing");
  }
  return number(key, 0.0);
}

double Config::number(const std::string& key, double fallback) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  return node ? scalar_as<double>(*this, node, key, "a number") : fallback;
}

std::int64_t Config::integer(const std::string& key, std::int64_t fallback) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  return node ? scalar_as<std::int64_t>(*this, node, key, "an integer") : fallback;
}

std::optional<std::uint64_t> Config::unsigned_integer(const std::string& key) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  if (!node) {
    return std::nullopt;
  }
  if (node.IsScalar() && !node.Scalar().empty() && node.Scalar().front() == '-') {
    fail(key, "expected a nonnegative integer");
  }
  return scalar_as<std::uint64_t>(*this, node, key, "a nonnegative integer");
}

std::string Config::text(const std::string& key, const std::string& fallback) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  return node ? scalar_as<std::string>(*this, node, key, "a string") : fallback;
}

bool Config::flag(const std::string& key, bool fallback) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  return node ? scalar_as<bool>(*this, node, key, "true or false") : fallback;
}

std::vector<double> Config::numbers(const std::string& key) {
  if (!has(key)) {
    fail(key, "required key is missing");
  }
  return numbers(key, {});
}

std::vector<double> Config::numbers(const std::string& key, std::vector<double> fallback) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  if (!node) {
    return fallback;
  }
  if (node.IsScalar()) {
    return {scalar_as<double>(*this, node, key, "a number or list of numbers")};
  }
  if (!node.IsSequence()) {
    fail(key, "expected a list of numbers");
  }
  std::vector<double> out;
  for (const auto& item : node) {
    out.push_back(scalar_as<double>(*this, item, key, "a list of numbers"));
  }
  return out;
}

std::vector<std::string> Config::strings(const std::string& key) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  if (!node) {
    return {};
  }
  if (!node.IsSequence()) {
    fail(key, "expected a list of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : node) {
    out.push_back(scalar_as<std::string>(*this, item, key, "a list of strings"));
  }
  return out;
}

Matrix Config::matrix(const std::string& key) {
  impl_->used.insert(key);
  const auto node = std::as_const(impl_->root)[key];
  if (!node) {
    fail(key, "required key is missing");
  }
  if (!node.IsSequence() || node.size() == 0) {
    fail(key, "expected a nonempty list");
  }
  if (!node[0].IsSequence()) {
    const auto column = numbers(key);
    return Eigen::Map<const Vector>(column.data(), static_cast<Eigen::Index>(column.size()));
  }
  const std::size_t cols = node[0].size();
  Matrix out(static_cast<Eigen::Index>(node.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].IsSequence() || node[i].size() != cols || cols == 0) {
      fail(key, "rows must be nonempty lists of equal length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          scalar_as<double>(*this, node[i][j], key, "a number");
    }
  }
  return out;
}

void Config::reject_unused() const {
  for (const auto& entry : impl_->root) {
    const auto key = entry.first.as<std::string>();
    if (impl_->used.count(key) == 0) {
      raise(impl_->where(entry.first) + "unknown key '" + key + "'");
    }
  }
}

}  // namespace entis::cli
