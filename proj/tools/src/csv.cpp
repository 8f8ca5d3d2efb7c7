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

#include "glottal/tools/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "glottal/tools/wav.hpp"

namespace glottal::tools {

std::string cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string cell(std::ptrdiff_t v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "1" : "0"; }

std::string cell(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const char* v) { return cell(std::string_view(v)); }

std::string cell(const std::optional<double>& v) { return v ? cell(*v) : std::string(); }
std::string cell(const std::optional<std::ptrdiff_t>& v) { return v ? cell(*v) : std::string(); }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("CSV row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out = "# schema=" + std::to_string(kCsvSchemaVersion) + "\n";
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_file_atomic(path, render()); }

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

}  // namespace glottal::tools
