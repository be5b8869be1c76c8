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

#include "ripost/ingest.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace ripost {

namespace {

constexpr std::uint64_t kMaxDenseCells = 100'000'000;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_int(const std::string& s, std::int64_t* out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) {
    return false;
  }
  *out = v;
  return true;
}

std::string cell_error(const std::string& what, std::uint64_t row,
                       const std::string& column) {
  std::ostringstream os;
  os << what << " in column '" << column << "' at data row " << row;
  return os.str();
}

}  // namespace

DomainSpec load_domain_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open domain file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("domain file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("domain file must be a JSON object");
  DomainSpec spec;
  for (const auto& [name, v] : j.items()) {
    if (!v.is_object()) {
      throw ConfigError("domain entry for '" + name + "' must be an object");
    }
    ColumnSpec cs;
    if (v.contains("bins")) {
      cs.bins = v.at("bins").get<std::uint32_t>();
      if (*cs.bins == 0) {
        throw ConfigError("column '" + name + "': bins must be >= 1");
      }
      if (v.contains("start") || v.contains("end")) {
        throw ConfigError("column '" + name +
                          "': bins and start/end are mutually exclusive");
      }
    } else if (v.contains("start") && v.contains("end")) {
      cs.start = v.at("start").get<std::int64_t>();
      cs.end = v.at("end").get<std::int64_t>();
      if (*cs.start > *cs.end) {
        throw ConfigError("column '" + name + "': start > end");
      }
    } else {
      throw ConfigError("column '" + name +
                        "': expected {start,end} or {bins}");
    }
    spec[name] = cs;
  }
  return spec;
}

IngestResult ingest_csv(const std::string& path,
                        const std::vector<std::string>& group_by,
                        const DomainSpec& spec) {
  if (group_by.empty()) throw ConfigError("group_by must name a column");
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw IngestError("CSV file has no header row: " + path);
  }
  const std::vector<std::string> header = split_csv_line(line);

  // Resolve group_by columns against the header.
  std::vector<std::size_t> col_idx;
  for (const auto& name : group_by) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw ConfigError("group_by column '" + name + "' not found in header");
    }
    col_idx.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  const std::size_t ncols = group_by.size();
  struct ColState {
    bool binned = false;
    std::uint32_t bins = 0;
    bool declared = false;
    std::int64_t start = 0, end = 0;  // declared integer bounds
  };
  std::vector<ColState> cols(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    const auto it = spec.find(group_by[c]);
    if (it == spec.end()) continue;
    const ColumnSpec& cs = it->second;
    if (cs.bins) {
      cols[c].binned = true;
      cols[c].bins = *cs.bins;
    } else {
      cols[c].declared = true;
      cols[c].start = *cs.start;
      cols[c].end = *cs.end;
    }
  }

  // First pass: parse the group-by projection of every row.
  struct RawRow {
    std::vector<std::int64_t> ints;   // for integer columns
    std::vector<double> nums;         // for binned columns
  };
  std::vector<RawRow> rows;
  std::uint64_t row_no = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row_no;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      std::ostringstream os;
      os << "data row " << row_no << " has " << fields.size()
         << " fields, header has " << header.size();
      throw IngestError(os.str());
    }
    RawRow raw;
    raw.ints.assign(ncols, 0);
    raw.nums.assign(ncols, 0.0);
    for (std::size_t c = 0; c < ncols; ++c) {
      const std::string& cell = fields[col_idx[c]];
      if (cols[c].binned) {
        if (!parse_double(cell, &raw.nums[c])) {
          throw IngestError(cell_error("non-numeric value", row_no,
                                       group_by[c]));
        }
      } else {
        if (!parse_int(cell, &raw.ints[c])) {
          throw IngestError(cell_error("non-integer value", row_no,
                                       group_by[c]));
        }
      }
    }
    rows.push_back(std::move(raw));
  }

  // Resolve per-column domains: declared, or inferred from the data.
  IngestInfo info;
  info.row_count = row_no;
  std::vector<Dim> dims(ncols);
  std::vector<double> bin_min(ncols, 0.0), bin_width(ncols, 1.0);
  for (std::size_t c = 0; c < ncols; ++c) {
    dims[c].name = group_by[c];
    if (cols[c].binned) {
      dims[c].start = 0;
      dims[c].end = static_cast<std::int64_t>(cols[c].bins) - 1;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (const auto& r : rows) {
        lo = std::min(lo, r.nums[c]);
        hi = std::max(hi, r.nums[c]);
      }
      if (rows.empty()) {
        lo = 0.0;
        hi = 1.0;
      }
      bin_min[c] = lo;
      bin_width[c] = (hi > lo) ? (hi - lo) / cols[c].bins : 1.0;
      info.inferred_columns.push_back(group_by[c]);  // edges are data-derived
    } else if (cols[c].declared) {
      dims[c].start = cols[c].start;
      dims[c].end = cols[c].end;
    } else {
      if (rows.empty()) {
        throw ConfigError("cannot infer domain of column '" + group_by[c] +
                          "' from an empty input; declare it explicitly");
      }
      std::int64_t lo = rows[0].ints[c], hi = rows[0].ints[c];
      for (const auto& r : rows) {
        lo = std::min(lo, r.ints[c]);
        hi = std::max(hi, r.ints[c]);
      }
      dims[c].start = lo;
      dims[c].end = hi;
      info.inferred_columns.push_back(group_by[c]);
    }
  }

  Domain domain(dims);
  if (domain.cell_count() > kMaxDenseCells) {
    throw ConfigError("domain too large for dense storage (" +
                      std::to_string(domain.cell_count()) + " cells)");
  }
  CountTensor tensor(domain);

  std::vector<std::int64_t> coords(ncols);
  std::uint64_t n = 0;
  for (const auto& r : rows) {
    ++n;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (cols[c].binned) {
        const double pos = (r.nums[c] - bin_min[c]) / bin_width[c];
        std::int64_t b = static_cast<std::int64_t>(std::floor(pos));
        b = std::clamp<std::int64_t>(b, 0, dims[c].end);
        coords[c] = b;
      } else {
        if (r.ints[c] < dims[c].start || r.ints[c] > dims[c].end) {
          throw IngestError(cell_error("value outside declared domain", n,
                                       group_by[c]));
        }
        coords[c] = r.ints[c];
      }
    }
    tensor.increment(coords);
  }

  return {std::move(tensor), std::move(info)};
}

}  // namespace ripost
