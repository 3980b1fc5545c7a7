// Copyright 2026 The tagdesc Authors.
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

#ifndef TAGDESC_CSV_H_
#define TAGDESC_CSV_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tagdesc {

// A header row plus string cells. Rectangular by construction.
class DataTable {
 public:
  DataTable() = default;
  DataTable(std::vector<std::string> header,
            std::vector<std::vector<std::string>> rows);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return header_.size(); }
  const std::string& cell(std::size_t row, std::size_t col) const {
    return rows_[row][col];
  }
  std::optional<std::size_t> FindColumn(std::string_view name) const;
  // Throws a config error naming the column.
  std::size_t ColumnIndex(std::string_view name) const;
  std::vector<std::string> Column(std::string_view name) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// RFC 4180-style parsing: comma separated, double-quote escaping, CRLF or LF
// line ends. Blank lines are skipped. Cells are trimmed of surrounding
// spaces unless quoted.
DataTable ParseCsv(std::string_view text);
DataTable ReadCsvFile(const std::string& path);

// Quotes a field if it contains a comma, quote or newline.
std::string CsvEscape(std::string_view field);

// Reads a whole file; throws an I/O error on failure.
std::string ReadFile(const std::string& path);
// Writes via a temporary file and rename, so readers never observe a
// partially written output.
void WriteFileAtomic(const std::string& path, std::string_view contents);

// Cells treated as missing: "", "NA", "N/A", "NaN", "nan", "?", "null".
bool IsMissingCell(std::string_view cell);

}  // namespace tagdesc

#endif  // TAGDESC_CSV_H_
