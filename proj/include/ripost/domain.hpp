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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ripost/error.hpp"

namespace ripost {

/// One named dimension with an inclusive discrete range [start, end].
struct Dim {
  std::string name;
  std::int64_t start = 0;
  std::int64_t end = 0;

  std::uint64_t length() const {
    return static_cast<std::uint64_t>(end - start) + 1;
  }
  bool operator==(const Dim&) const = default;
};

/// Inclusive sub-range [lo, hi] along one dimension.
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::uint64_t length() const {
    return static_cast<std::uint64_t>(hi - lo) + 1;
  }
  bool operator==(const Interval&) const = default;
  auto operator<=>(const Interval&) const = default;
};

/// Rectangular sub-domain: one inclusive interval per dimension.
class Rect {
 public:
  Rect() = default;
  explicit Rect(std::vector<Interval> ranges) : ranges_(std::move(ranges)) {}

  std::size_t ndim() const { return ranges_.size(); }
  const std::vector<Interval>& ranges() const { return ranges_; }
  const Interval& range(std::size_t d) const { return ranges_[d]; }

  std::uint64_t cell_count() const {
    std::uint64_t n = 1;
    for (const auto& r : ranges_) n *= r.length();
    return n;
  }

  bool contains(std::span<const std::int64_t> coords) const {
    for (std::size_t d = 0; d < ranges_.size(); ++d) {
      if (coords[d] < ranges_[d].lo || coords[d] > ranges_[d].hi) return false;
    }
    return true;
  }

  bool operator==(const Rect&) const = default;
  // Lexicographic by (lo, hi) per dimension; canonical leaf ordering.
  auto operator<=>(const Rect&) const = default;

 private:
  std::vector<Interval> ranges_;
};

/// Ordered set of named dimensions defining a dense row-major domain.
/// The last declared dimension varies fastest.
class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<Dim> dims);

  std::size_t ndim() const { return dims_.size(); }
  const Dim& dim(std::size_t d) const { return dims_[d]; }
  const std::vector<Dim>& dims() const { return dims_; }
  std::uint64_t cell_count() const { return cells_; }

  /// Index of the dimension with the given name, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(const std::string& name) const;

  /// Row-major flat index of an absolute coordinate tuple.
  std::uint64_t index_of(std::span<const std::int64_t> coords) const;

  /// Absolute coordinate tuple of a flat index.
  std::vector<std::int64_t> coords_of(std::uint64_t index) const;

  Rect full_rect() const;

  /// Throws DomainError unless r has matching arity and lies inside this
  /// domain with lo <= hi per dimension.
  void validate_rect(const Rect& r) const;

  /// Visits every row-major contiguous run of cells inside r. The callback
  /// receives the absolute coordinates of the run's first cell, the flat
  /// index of that cell, and the run length (extent of the last dimension
  /// within r). Runs are visited in row-major order.
  template <typename F>
  void for_each_run(const Rect& r, F&& fn) const {
    const std::size_t nd = dims_.size();
    const auto& rr = r.ranges();
    std::vector<std::int64_t> coords(nd);
    for (std::size_t d = 0; d < nd; ++d) coords[d] = rr[d].lo;
    const std::uint64_t run_len = rr[nd - 1].length();
    for (;;) {
      fn(std::span<const std::int64_t>(coords.data(), nd), index_of(coords),
         run_len);
      std::size_t d = nd - 1;
      for (;;) {
        if (d == 0) return;
        --d;
        if (coords[d] < rr[d].hi) {
          ++coords[d];
          break;
        }
        coords[d] = rr[d].lo;
      }
    }
  }

  bool operator==(const Domain&) const;

 private:
  std::vector<Dim> dims_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t cells_ = 0;
};

/// Splits r after absolute coordinate `cut` along dimension `dim`:
/// left keeps [lo, cut], right keeps [cut+1, hi]. Throws DomainError if the
/// cut is not interior.
std::pair<Rect, Rect> split_rect(const Rect& r, std::size_t dim,
                                 std::int64_t cut);

/// Intersection of two rects of equal arity; empty optional when disjoint.
bool rects_intersect(const Rect& a, const Rect& b);
std::uint64_t intersection_cell_count(const Rect& a, const Rect& b);

/// Verifies that the rects are pairwise disjoint and cover the domain
/// exactly. Returns an empty string on success, else a description of the
/// first violation found.
std::string check_partition(const Domain& domain, std::span<const Rect> rects);

}  // namespace ripost
