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
#include <optional>
#include <string>
#include <vector>

#include "ripost/decompose.hpp"
#include "ripost/mechanisms.hpp"
#include "ripost/tensor.hpp"

namespace ripost {

struct ViewMetadata {
  double epsilon = 0;
  std::string config_digest;
  NoiseMode noise_mode = NoiseMode::kStandard;
  /// False for NoiseOff (and other non-private) views; such views are
  /// stamped NOT PRIVATE and refuse to load without an explicit
  /// allow-unsafe override.
  bool releasable = true;
  std::string created;
  std::string generator;
  std::vector<std::string> inferred_columns;
};

/// Published private view: disjoint leaf blocks with noisy means covering
/// the whole domain. Immutable; concurrent query evaluation is safe.
class PrivateView {
 public:
  PrivateView() = default;

  /// Validates the partition and stores leaves in canonical order
  /// (lexicographic by rect). Throws FormatError if the leaves do not
  /// partition the domain.
  PrivateView(Domain domain, std::vector<LeafBlock> leaves,
              ViewMetadata metadata);

  const Domain& domain() const { return domain_; }
  const std::vector<LeafBlock>& leaves() const { return leaves_; }
  const ViewMetadata& metadata() const { return metadata_; }

 private:
  Domain domain_;
  std::vector<LeafBlock> leaves_;
  ViewMetadata metadata_;
};

/// Count range query: optional inclusive sub-range per dimension; an absent
/// entry means the full range of that dimension.
struct RangeQuery {
  std::vector<std::optional<Interval>> ranges;
};

/// Builds a query from (dimension name, interval) pairs. Unknown dimension
/// names raise QueryError.
RangeQuery make_query(
    const Domain& domain,
    const std::vector<std::pair<std::string, Interval>>& ranges);

/// Materializes the query as a rect over the domain (absent dimensions
/// expand to their full range). Throws QueryError when a specified range
/// leaves the domain.
Rect query_rect(const Domain& domain, const RangeQuery& q);

/// Approximate answer from the view: sum over leaves of
/// (cells in leaf-query intersection) x noisy mean.
double answer(const PrivateView& view, const RangeQuery& q);

/// Exact ground-truth answer from the raw tensor (benchmarking only).
double answer_exact(const CountTensor& t, const RangeQuery& q);

/// Spatial index over the view's leaves; accelerates lookup only. Answers
/// are identical to the linear scan.
class LeafIndex {
 public:
  explicit LeafIndex(const PrivateView& view);

  double answer(const RangeQuery& q) const;

  /// Ids (positions in view.leaves()) of leaves intersecting the rect,
  /// ascending.
  std::vector<std::uint32_t> overlapping(const Rect& r) const;

 private:
  struct Node {
    Rect bbox;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::vector<std::uint32_t> leaf_ids;  // terminal nodes only
  };

  std::int32_t build(std::vector<std::uint32_t> ids);
  void collect(std::int32_t node, const Rect& r,
               std::vector<std::uint32_t>* out) const;

  const PrivateView* view_ = nullptr;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

inline LeafIndex build_index(const PrivateView& view) {
  return LeafIndex(view);
}

}  // namespace ripost
