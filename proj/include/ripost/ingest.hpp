// Copyright 2026 The ripost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ripost/tensor.hpp"

namespace ripost {

/// Per-column domain declaration. Exactly one of the two forms:
///  - explicit integer bounds [start, end] (values must be integers inside),
///  - equi-width binning with `bins` buckets for numeric columns
///    (bin edges span the observed data min/max).
struct ColumnSpec {
  std::optional<std::int64_t> start;
  std::optional<std::int64_t> end;
  std::optional<std::uint32_t> bins;
};

/// Column name -> spec. Columns missing from the map get integer domains
/// inferred from the data min/max (flagged in IngestInfo::inferred_columns).
using DomainSpec = std::map<std::string, ColumnSpec>;

struct IngestInfo {
  std::uint64_t row_count = 0;
  /// Columns whose bounds were inferred from the data rather than declared.
  /// Inference is data-dependent; views built from such tensors carry the
  /// flag in their metadata.
  std::vector<std::string> inferred_columns;
};

struct IngestResult {
  CountTensor tensor;
  IngestInfo info;
};

/// Materializes SELECT group_by..., COUNT(*) over a comma-delimited CSV with
/// a header row. Unknown group_by column -> ConfigError; unparsable cell or
/// out-of-declared-range value -> IngestError naming row and column.
IngestResult ingest_csv(const std::string& path,
                        const std::vector<std::string>& group_by,
                        const DomainSpec& spec = {});

/// Parses a domain declaration file: JSON object mapping column name to
/// {"start": i, "end": j} or {"bins": n}.
DomainSpec load_domain_spec(const std::string& path);

}  // namespace ripost
