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

#include "dprank/csv_util.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "dprank/errors.h"

namespace dprank::csv {

namespace {

std::string_view Trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void Fail(std::string_view what, std::string_view field,
                       std::size_t line_no) {
  throw ValidationError("line " + std::to_string(line_no) + ": " +
                        std::string(what) + " '" + std::string(field) + "'");
}

}  // namespace

std::vector<std::string_view> SplitRow(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      break;
    }
    out.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

double ParseDouble(std::string_view field, std::size_t line_no) {
  if (field == "inf" || field == "Inf" || field == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (field == "-inf" || field == "-Inf") {
    return -std::numeric_limits<double>::infinity();
  }
  double v = 0;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, v);
  if (field.empty() || ec != std::errc() || ptr != last || std::isnan(v)) {
    Fail("not a number", field, line_no);
  }
  return v;
}

std::int64_t ParseInt(std::string_view field, std::size_t line_no) {
  std::int64_t v = 0;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, v);
  if (field.empty() || ec != std::errc() || ptr != last) {
    Fail("not an integer", field, line_no);
  }
  return v;
}

std::string FormatDouble(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw MissingDataError("no such file: " + path.string());
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

void ExpectHeader(std::istream& in, std::string_view expected,
                  const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(path.string() + ": missing header row");
  }
  if (!line.empty() && static_cast<unsigned char>(line[0]) == 0xEF &&
      line.size() >= 3) {
    line.erase(0, 3);  // UTF-8 BOM
  }
  if (Trim(line) != expected) {
    throw ValidationError(path.string() + ": expected header '" +
                          std::string(expected) + "', got '" + line + "'");
  }
}

}  // namespace dprank::csv
