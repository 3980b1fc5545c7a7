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

#include "tagdesc/csv.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tagdesc/error.h"

namespace tagdesc {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits into records of fields. Tracks whether a record was blank.
std::vector<std::vector<std::string>> Tokenize(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;      // inside quotes
  bool was_quoted = false;  // current field had quotes
  bool record_has_content = false;

  auto end_field = [&] {
    record.push_back(was_quoted ? field : std::string(Trim(field)));
    field.clear();
    was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = !record_has_content && record.size() == 1 &&
                       record.front().empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        was_quoted = true;
        record_has_content = true;
        field.clear();
        break;
      case ',':
        record_has_content = true;
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        if (c != ' ' && c != '\t') record_has_content = true;
        field.push_back(c);
    }
  }
  if (quoted) throw DataError("csv: unterminated quoted field");
  if (!field.empty() || !record.empty() || record_has_content) end_record();
  return records;
}

}  // namespace

DataTable::DataTable(std::vector<std::string> header,
                     std::vector<std::vector<std::string>> rows)
    : header_(std::move(header)), rows_(std::move(rows)) {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != header_.size()) {
      throw DataError("csv: row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows_[r].size()) + " fields, header has " +
                      std::to_string(header_.size()));
    }
  }
}

std::optional<std::size_t> DataTable::FindColumn(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t DataTable::ColumnIndex(std::string_view name) const {
  if (auto i = FindColumn(name)) return *i;
  throw ConfigError("csv: no column named '" + std::string(name) + "'");
}

std::vector<std::string> DataTable::Column(std::string_view name) const {
  const std::size_t col = ColumnIndex(name);
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row[col]);
  return out;
}

DataTable ParseCsv(std::string_view text) {
  // Strip a UTF-8 byte order mark.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  auto records = Tokenize(text);
  if (records.empty()) throw DataError("csv: no header row");
  std::vector<std::string> header = std::move(records.front());
  records.erase(records.begin());
  return DataTable(std::move(header), std::move(records));
}

DataTable ReadCsvFile(const std::string& path) {
  try {
    return ParseCsv(ReadFile(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    throw Error(e.kind(), e.code(), path + ": " + e.what());
  }
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void WriteFileAtomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("error while writing '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

bool IsMissingCell(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "N/A" || cell == "NaN" ||
         cell == "nan" || cell == "?" || cell == "null";
}

}  // namespace tagdesc
