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

#ifndef DPRANK_CSV_UTIL_H_
#define DPRANK_CSV_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace dprank::csv {

// Splits one CSV line on commas and trims surrounding whitespace. Quoting is
// not supported; none of the schemas here need it.
std::vector<std::string_view> SplitRow(std::string_view line);

// Parse helpers. On failure they throw ValidationError mentioning `line_no`.
double ParseDouble(std::string_view field, std::size_t line_no);
std::int64_t ParseInt(std::string_view field, std::size_t line_no);

// Shortest representation that parses back to the same double; "inf"/"-inf"
// for infinities.
std::string FormatDouble(double v);

std::ifstream OpenForRead(const std::filesystem::path& path);
std::ofstream OpenForWrite(const std::filesystem::path& path);

// Reads the header line and checks it equals `expected` (after trimming).
void ExpectHeader(std::istream& in, std::string_view expected,
                  const std::filesystem::path& path);

}  // namespace dprank::csv

#endif  // DPRANK_CSV_UTIL_H_
