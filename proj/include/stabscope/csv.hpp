// Copyright 2026 The stabscope Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stabscope {

/// Shortest round-trip decimal, independent of the C locale.
std::string format_number(double v);
std::string format_number(std::uint64_t v);

/// Header plus rows, comma-separated, '\n' line endings. Cells are written
/// verbatim; callers keep them free of commas and quotes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string str() const;
  void write(const std::string& path) const;
};

/// Reads a table written by CsvTable::write.
CsvTable read_csv(const std::string& path);

/// Writes bytes to `path`, throwing DataError on failure.
void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

}  // namespace stabscope
