// Copyright 2026 The dprank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPRANK_CONFIG_H_
#define DPRANK_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dprank {

// Flat key=value configuration. Blank lines and lines starting with '#' are
// ignored; whitespace around keys and values is trimmed. Lists are comma
// separated. Keys are consumed with Take*, and Finish() rejects leftovers so
// that typos do not pass silently.
class Config {
 public:
  Config() = default;
  static Config Load(const std::filesystem::path& path);
  static Config Parse(std::istream& in, const std::string& source);

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  void Set(const std::string& key, std::string value);

  std::optional<std::string> Take(const std::string& key);
  std::optional<double> TakeDouble(const std::string& key);
  std::optional<std::int64_t> TakeInt(const std::string& key);
  std::optional<std::uint64_t> TakeUnsigned(const std::string& key);
  std::optional<std::vector<double>> TakeDoubleList(const std::string& key);
  std::optional<std::vector<int>> TakeIntList(const std::string& key);
  std::optional<std::vector<std::string>> TakeList(const std::string& key);

  // Throws ValidationError naming any key that was never taken.
  void Finish() const;

 private:
  std::string source_;
  std::map<std::string, std::string> values_;
  std::map<std::string, std::size_t> lines_;
};

}  // namespace dprank

#endif  // DPRANK_CONFIG_H_
