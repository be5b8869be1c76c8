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
#include <span>
#include <utility>
#include <vector>

#include "ripost/domain.hpp"

namespace ripost {

/// Dense count tensor over a discrete domain, row-major storage.
/// Immutable after construction; safe for concurrent reads.
class CountTensor {
 public:
  CountTensor() = default;
  CountTensor(Domain domain, std::vector<std::uint64_t> cells);

  /// All-zero tensor over the domain.
  explicit CountTensor(Domain domain);

  const Domain& domain() const { return domain_; }
  const std::vector<std::uint64_t>& cells() const { return cells_; }

  std::uint64_t at(std::span<const std::int64_t> coords) const {
    return cells_[domain_.index_of(coords)];
  }
  std::uint64_t at_index(std::uint64_t index) const { return cells_[index]; }

  /// Total count over the whole domain.
  std::uint64_t total() const;

  /// Exact sum of the cells inside r. Throws DomainError on a bad rect.
  std::uint64_t sum_cells(const Rect& r) const;

  /// (#cells == 0, #cells > 0) inside r. Throws DomainError on a bad rect.
  std::pair<std::uint64_t, std::uint64_t> count_empty_nonempty(
      const Rect& r) const;

  /// Mutable access used by ingestion only.
  void increment(std::span<const std::int64_t> coords) {
    ++cells_[domain_.index_of(coords)];
  }

 private:
  Domain domain_;
  std::vector<std::uint64_t> cells_;
};

}  // namespace ripost
