//
// Copyright 2026 The sdcwork Authors
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
//

#include "sdc/csv.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "sdc/error.h"

namespace sdc {
namespace {

std::string LineMessage(size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

// Splits a CSV document into records. Quoted fields may contain separators,
// doubled quotes and line breaks.
std::vector<std::pair<size_t, std::vector<std::string>>> SplitRecords(
    std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }
  std::vector<std::pair<size_t, std::vector<std::string>>> records;
  std::vector<std::string> fields;
  std::string field;
  size_t line = 1;
  size_t record_line = 1;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool record_has_content = false;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    if (record_has_content || fields.size() > 1 || !fields.front().empty()) {
      records.emplace_back(record_line, std::move(fields));
    }
    fields.clear();
    record_has_content = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          Fail(ErrorCode::kParse,
               LineMessage(line, "malformed CSV row: stray quote"));
        }
        in_quotes = true;
        field_was_quoted = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        if (field_was_quoted) {
          Fail(ErrorCode::kParse, LineMessage(line,
                                              "malformed CSV row: text after "
                                              "closing quote"));
        }
        field.push_back(c);
        record_has_content = true;
    }
  }
  if (in_quotes) {
    Fail(ErrorCode::kParse,
         LineMessage(record_line, "malformed CSV row: unterminated quote"));
  }
  if (record_has_content || !field.empty()) end_record();
  return records;
}

Value ParseCell(const std::string& text, const ColumnSpec& spec, size_t line) {
  if (spec.IsMissingToken(text)) return Missing{text};
  auto bad = [&]() -> Value {
    Fail(ErrorCode::kParse,
         "column '" + spec.name + "', line " + std::to_string(line) +
             ": cannot parse '" + text + "' as " +
             std::string(KindName(spec.kind)));
  };
  switch (spec.kind) {
    case ValueKind::kNumeric:
      if (auto v = ParseNumber(text)) return *v;
      return bad();
    case ValueKind::kDate:
      if (auto v = ParseDate(text)) return *v;
      return bad();
    case ValueKind::kDateTime:
      if (auto v = ParseDateTime(text)) return *v;
      return bad();
    case ValueKind::kCategorical:
      if (!spec.levels.empty()) {
        bool known = false;
        for (const auto& l : spec.levels) known = known || l == text;
        if (!known) return bad();
      }
      return text;
    case ValueKind::kIdentifier:
      return text;
  }
  return bad();
}

bool NeedsQuotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void AppendField(std::string& out, std::string_view s) {
  if (!NeedsQuotes(s)) {
    out.append(s);
    return;
  }
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

RawTable ParseCsv(std::string_view text) {
  auto records = SplitRecords(text);
  if (records.empty()) Fail(ErrorCode::kParse, "CSV document has no header row");
  RawTable table;
  table.header = std::move(records.front().second);
  for (size_t i = 1; i < records.size(); ++i) {
    auto& [line, fields] = records[i];
    if (fields.size() != table.header.size()) {
      Fail(ErrorCode::kParse,
           LineMessage(line, "malformed CSV row: expected " +
                                 std::to_string(table.header.size()) +
                                 " fields, found " +
                                 std::to_string(fields.size())));
    }
    table.rows.push_back(std::move(fields));
    table.row_lines.push_back(line);
  }
  return table;
}

Schema InferSchema(const RawTable& table) {
  if (table.rows.empty()) {
    Fail(ErrorCode::kInvalidArgument, "cannot infer a schema from an empty table");
  }
  std::vector<ColumnSpec> specs;
  for (size_t c = 0; c < table.header.size(); ++c) {
    ColumnSpec spec;
    spec.name = table.header[c];
    bool all_datetime = true, all_date = true, all_numeric = true;
    size_t present = 0;
    for (const auto& row : table.rows) {
      const std::string& cell = row[c];
      if (spec.IsMissingToken(cell)) continue;
      ++present;
      all_datetime = all_datetime && ParseDateTime(cell).has_value();
      all_date = all_date && ParseDate(cell).has_value();
      all_numeric = all_numeric && ParseNumber(cell).has_value();
    }
    if (present == 0) {
      spec.kind = ValueKind::kCategorical;
    } else if (all_datetime) {
      spec.kind = ValueKind::kDateTime;
    } else if (all_date) {
      spec.kind = ValueKind::kDate;
    } else if (all_numeric) {
      spec.kind = ValueKind::kNumeric;
    } else {
      spec.kind = ValueKind::kCategorical;
    }
    specs.push_back(std::move(spec));
  }
  return Schema(std::move(specs));
}

Dataset LoadCsv(std::string_view text, const std::optional<Schema>& schema) {
  RawTable table = ParseCsv(text);
  Schema resolved = schema ? *schema : InferSchema(table);
  if (resolved.Names() != table.header) {
    Fail(ErrorCode::kSchemaMismatch,
         "CSV header does not match the schema's column names and order");
  }
  std::vector<Column> columns(resolved.size());
  for (auto& col : columns) col.reserve(table.rows.size());
  for (size_t r = 0; r < table.rows.size(); ++r) {
    for (size_t c = 0; c < resolved.size(); ++c) {
      columns[c].push_back(
          ParseCell(table.rows[r][c], resolved[c], table.row_lines[r]));
    }
  }
  return Dataset(std::move(resolved), std::move(columns));
}

Dataset LoadCsvFile(const std::string& path,
                    const std::optional<Schema>& schema) {
  return LoadCsv(ReadFile(path), schema);
}

std::string WriteCsv(const Dataset& ds) {
  std::string out;
  const Schema& schema = ds.schema();
  for (size_t c = 0; c < schema.size(); ++c) {
    if (c) out.push_back(',');
    AppendField(out, schema[c].name);
  }
  out.push_back('\n');
  for (size_t r = 0; r < ds.row_count(); ++r) {
    for (size_t c = 0; c < schema.size(); ++c) {
      if (c) out.push_back(',');
      std::string text = FormatValue(ds.cell(r, c));
      // A lone empty field would read back as a blank line.
      if (text.empty() && schema.size() == 1) {
        out.append("\"\"");
        continue;
      }
      AppendField(out, text);
    }
    out.push_back('\n');
  }
  return out;
}

void WriteCsvFile(const Dataset& ds, const std::string& path) {
  WriteFile(path, WriteCsv(ds));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kNotFound, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace sdc
