// Copyright 2026 The nbscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nbscreen {

/// Human-editable `key = value` text. Blank lines and lines starting with
/// '#' are ignored; keys may repeat and keep file order.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text);
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(std::string_view key) const;
  /// Last value for a key.
  std::optional<std::string> get(std::string_view key) const;
  std::string require(std::string_view key) const;
  /// Every value of a repeated key, in order.
  std::vector<std::string> all(std::string_view key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  double get_double(std::string_view key, double fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Split on whitespace.
std::vector<std::string> split_words(std::string_view text);
/// Split on commas, trimming whitespace and dropping empty items.
std::vector<std::string> split_list(std::string_view text);
std::string_view trim(std::string_view text);

double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);

}  // namespace nbscreen
