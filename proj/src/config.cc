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

#include "dprank/config.h"

#include <charconv>
#include <fstream>

#include "dprank/csv_util.h"
#include "dprank/errors.h"

namespace dprank {

namespace {

std::string Trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

Config Config::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  return Parse(in, path.string());
}

Config Config::Parse(std::istream& in, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = Trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(source + ": line " + std::to_string(line_no) +
                            ": expected key=value");
    }
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    if (key.empty()) {
      throw ValidationError(source + ": line " + std::to_string(line_no) +
                            ": empty key");
    }
    if (cfg.values_.count(key)) {
      throw ValidationError(source + ": line " + std::to_string(line_no) +
                            ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = Trim(std::string_view(body).substr(eq + 1));
    cfg.lines_[key] = line_no;
  }
  return cfg;
}

void Config::Set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
  lines_.erase(key);
}

std::optional<std::string> Config::Take(const std::string& key) {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  std::string v = std::move(it->second);
  values_.erase(it);
  return v;
}

std::optional<double> Config::TakeDouble(const std::string& key) {
  const std::size_t line = lines_.count(key) ? lines_.at(key) : 0;
  auto v = Take(key);
  if (!v) return std::nullopt;
  return csv::ParseDouble(*v, line);
}

std::optional<std::int64_t> Config::TakeInt(const std::string& key) {
  const std::size_t line = lines_.count(key) ? lines_.at(key) : 0;
  auto v = Take(key);
  if (!v) return std::nullopt;
  return csv::ParseInt(*v, line);
}

std::optional<std::uint64_t> Config::TakeUnsigned(const std::string& key) {
  auto v = Take(key);
  if (!v) return std::nullopt;
  std::uint64_t out = 0;
  const char* last = v->data() + v->size();
  auto [ptr, ec] = std::from_chars(v->data(), last, out);
  if (v->empty() || ec != std::errc() || ptr != last) {
    throw ValidationError(key + ": not an unsigned integer '" + *v + "'");
  }
  return out;
}

std::optional<std::vector<std::string>> Config::TakeList(const std::string& key) {
  auto v = Take(key);
  if (!v) return std::nullopt;
  std::vector<std::string> out;
  for (auto field : csv::SplitRow(*v)) {
    if (field.empty()) throw ValidationError(key + ": empty list element");
    out.emplace_back(field);
  }
  return out;
}

std::optional<std::vector<double>> Config::TakeDoubleList(const std::string& key) {
  const std::size_t line = lines_.count(key) ? lines_.at(key) : 0;
  auto items = TakeList(key);
  if (!items) return std::nullopt;
  std::vector<double> out;
  for (const auto& s : *items) out.push_back(csv::ParseDouble(s, line));
  return out;
}

std::optional<std::vector<int>> Config::TakeIntList(const std::string& key) {
  const std::size_t line = lines_.count(key) ? lines_.at(key) : 0;
  auto items = TakeList(key);
  if (!items) return std::nullopt;
  std::vector<int> out;
  for (const auto& s : *items) {
    out.push_back(static_cast<int>(csv::ParseInt(s, line)));
  }
  return out;
}

void Config::Finish() const {
  if (values_.empty()) return;
  std::string keys;
  for (const auto& [k, v] : values_) keys += (keys.empty() ? "" : ", ") + k;
  throw ValidationError((source_.empty() ? std::string("config") : source_) +
                        ": unknown key(s): " + keys);
}

}  // namespace dprank
