// Copyright 2026 The Glottal Authors
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

// CSV output with a versioned schema line. Numbers are printed in shortest
// round-trip form so identical values always give identical bytes.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glottal::tools {

inline constexpr int kCsvSchemaVersion = 1;

/// One CSV cell.
std::string cell(double v);
std::string cell(std::ptrdiff_t v);
std::string cell(int v);
std::string cell(std::size_t v);
std::string cell(bool v);
std::string cell(std::string_view v);
std::string cell(const char* v);
/// Empty cell when absent.
std::string cell(const std::optional<double>& v);
std::string cell(const std::optional<std::ptrdiff_t>& v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }

  /// "# schema=1" line, header line, then rows; '\n' line endings.
  std::string render() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace glottal::tools
