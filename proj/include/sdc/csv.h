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

#ifndef SDC_CSV_H_
#define SDC_CSV_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/dataset.h"
#include "sdc/schema.h"

namespace sdc {

// Header plus unparsed cells, as read from an RFC-4180 style CSV document.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based physical line on which each data row starts (header is line 1).
  std::vector<size_t> row_lines;
};

// Throws kParse with the offending line number on malformed input.
RawTable ParseCsv(std::string_view text);

// Per column, the first kind in DateTime > Date > Numeric > Categorical that
// parses every non-missing cell. Classes default to Insensitive.
Schema InferSchema(const RawTable& table);

// Parses `text` under `schema`, or under InferSchema when no schema is given.
Dataset LoadCsv(std::string_view text,
                const std::optional<Schema>& schema = std::nullopt);
Dataset LoadCsvFile(const std::string& path,
                    const std::optional<Schema>& schema = std::nullopt);

std::string WriteCsv(const Dataset& ds);
void WriteCsvFile(const Dataset& ds, const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace sdc

#endif  // SDC_CSV_H_
