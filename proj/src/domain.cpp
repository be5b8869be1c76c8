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

#include "ripost/domain.hpp"

#include <algorithm>
#include <limits>

namespace ripost {

Domain::Domain(std::vector<Dim> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw ConfigError("domain needs at least one dimension");
  }
  cells_ = 1;
  for (const auto& d : dims_) {
    if (d.start > d.end) {
      throw ConfigError("dimension '" + d.name + "' has start > end");
    }
    const std::uint64_t len = d.length();
    if (cells_ > std::numeric_limits<std::uint64_t>::max() / len) {
      throw ConfigError("domain cell count overflows 64 bits");
    }
    cells_ *= len;
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t d = dims_.size() - 1; d-- > 0;) {
    strides_[d] = strides_[d + 1] * dims_[d + 1].length();
  }
}

std::size_t Domain::find(const std::string& name) const {
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (dims_[d].name == name) return d;
  }
  return npos;
}

std::uint64_t Domain::index_of(std::span<const std::int64_t> coords) const {
  std::uint64_t idx = 0;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    idx += static_cast<std::uint64_t>(coords[d] - dims_[d].start) * strides_[d];
  }
  return idx;
}

std::vector<std::int64_t> Domain::coords_of(std::uint64_t index) const {
  std::vector<std::int64_t> coords(dims_.size());
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    coords[d] = dims_[d].start + static_cast<std::int64_t>(index / strides_[d]);
    index %= strides_[d];
  }
  return coords;
}

Rect Domain::full_rect() const {
  std::vector<Interval> ranges;
  ranges.reserve(dims_.size());
  for (const auto& d : dims_) ranges.push_back({d.start, d.end});
  return Rect(std::move(ranges));
}

void Domain::validate_rect(const Rect& r) const {
  if (r.ndim() != dims_.size()) {
    throw DomainError("rect arity does not match domain");
  }
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const auto& range = r.range(d);
    if (range.lo > range.hi || range.lo < dims_[d].start ||
        range.hi > dims_[d].end) {
      throw DomainError("rect out of bounds on dimension '" + dims_[d].name +
                        "'");
    }
  }
}

bool Domain::operator==(const Domain& other) const {
  return dims_ == other.dims_;
}

std::pair<Rect, Rect> split_rect(const Rect& r, std::size_t dim,
                                 std::int64_t cut) {
  if (dim >= r.ndim()) throw DomainError("split dimension out of range");
  const Interval& iv = r.range(dim);
  if (cut < iv.lo || cut >= iv.hi) {
    throw DomainError("cut is not interior to the rect");
  }
  std::vector<Interval> left = r.ranges();
  std::vector<Interval> right = r.ranges();
  left[dim].hi = cut;
  right[dim].lo = cut + 1;
  return {Rect(std::move(left)), Rect(std::move(right))};
}

bool rects_intersect(const Rect& a, const Rect& b) {
  for (std::size_t d = 0; d < a.ndim(); ++d) {
    if (a.range(d).hi < b.range(d).lo || b.range(d).hi < a.range(d).lo) {
      return false;
    }
  }
  return true;
}

std::uint64_t intersection_cell_count(const Rect& a, const Rect& b) {
  std::uint64_t n = 1;
  for (std::size_t d = 0; d < a.ndim(); ++d) {
    const std::int64_t lo = std::max(a.range(d).lo, b.range(d).lo);
    const std::int64_t hi = std::min(a.range(d).hi, b.range(d).hi);
    if (lo > hi) return 0;
    n *= static_cast<std::uint64_t>(hi - lo) + 1;
  }
  return n;
}

std::string check_partition(const Domain& domain,
                            std::span<const Rect> rects) {
  if (rects.empty()) return "partition has no blocks";
  std::uint64_t covered = 0;
  for (const Rect& r : rects) {
    try {
      domain.validate_rect(r);
    } catch (const DomainError& e) {
      return e.what();
    }
    covered += r.cell_count();
  }
  if (covered != domain.cell_count()) {
    return "blocks cover " + std::to_string(covered) + " cells, domain has " +
           std::to_string(domain.cell_count());
  }
  // With the cell counts adding up, any overlap is the only way the cover
  // can be wrong. Sort by first-dimension lo so the scan can stop early.
  std::vector<const Rect*> sorted;
  sorted.reserve(rects.size());
  for (const Rect& r : rects) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const Rect* a, const Rect* b) { return *a < *b; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (sorted[j]->range(0).lo > sorted[i]->range(0).hi) break;
      if (rects_intersect(*sorted[i], *sorted[j])) {
        return "blocks overlap";
      }
    }
  }
  return {};
}

}  // namespace ripost
