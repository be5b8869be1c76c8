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

#include "ripost/tensor.hpp"

#include <numeric>

namespace ripost {

CountTensor::CountTensor(Domain domain, std::vector<std::uint64_t> cells)
    : domain_(std::move(domain)), cells_(std::move(cells)) {
  if (cells_.size() != domain_.cell_count()) {
    throw ConfigError("cell array length does not match domain cell count");
  }
}

CountTensor::CountTensor(Domain domain)
    : domain_(std::move(domain)), cells_(domain_.cell_count(), 0) {}

std::uint64_t CountTensor::total() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
}

std::uint64_t CountTensor::sum_cells(const Rect& r) const {
  domain_.validate_rect(r);
  std::uint64_t sum = 0;
  domain_.for_each_run(r, [&](std::span<const std::int64_t>,
                              std::uint64_t start, std::uint64_t len) {
    const std::uint64_t* p = cells_.data() + start;
    for (std::uint64_t i = 0; i < len; ++i) sum += p[i];
  });
  return sum;
}

std::pair<std::uint64_t, std::uint64_t> CountTensor::count_empty_nonempty(
    const Rect& r) const {
  domain_.validate_rect(r);
  std::uint64_t nonempty = 0;
  domain_.for_each_run(r, [&](std::span<const std::int64_t>,
                              std::uint64_t start, std::uint64_t len) {
    const std::uint64_t* p = cells_.data() + start;
    for (std::uint64_t i = 0; i < len; ++i) nonempty += (p[i] > 0);
  });
  return {r.cell_count() - nonempty, nonempty};
}

}  // namespace ripost
