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

#include "ripost/view.hpp"

#include <algorithm>

namespace ripost {

PrivateView::PrivateView(Domain domain, std::vector<LeafBlock> leaves,
                         ViewMetadata metadata)
    : domain_(std::move(domain)),
      leaves_(std::move(leaves)),
      metadata_(std::move(metadata)) {
  std::sort(leaves_.begin(), leaves_.end(),
            [](const LeafBlock& a, const LeafBlock& b) {
              return a.rect < b.rect;
            });
  std::vector<Rect> rects;
  rects.reserve(leaves_.size());
  for (const auto& l : leaves_) rects.push_back(l.rect);
  const std::string err = check_partition(domain_, rects);
  if (!err.empty()) {
    throw FormatError("view leaves do not partition the domain: " + err);
  }
}

RangeQuery make_query(
    const Domain& domain,
    const std::vector<std::pair<std::string, Interval>>& ranges) {
  RangeQuery q;
  q.ranges.assign(domain.ndim(), std::nullopt);
  for (const auto& [name, iv] : ranges) {
    const std::size_t d = domain.find(name);
    if (d == Domain::npos) {
      throw QueryError("query names unknown dimension '" + name + "'");
    }
    q.ranges[d] = iv;
  }
  return q;
}

Rect query_rect(const Domain& domain, const RangeQuery& q) {
  if (q.ranges.size() != domain.ndim()) {
    throw QueryError("query arity does not match domain");
  }
  std::vector<Interval> ranges(domain.ndim());
  for (std::size_t d = 0; d < domain.ndim(); ++d) {
    const Dim& dim = domain.dim(d);
    if (q.ranges[d]) {
      const Interval& iv = *q.ranges[d];
      if (iv.lo > iv.hi || iv.lo < dim.start || iv.hi > dim.end) {
        throw QueryError("query range out of domain on dimension '" +
                         dim.name + "'");
      }
      ranges[d] = iv;
    } else {
      ranges[d] = {dim.start, dim.end};
    }
  }
  return Rect(std::move(ranges));
}

double answer(const PrivateView& view, const RangeQuery& q) {
  const Rect qr = query_rect(view.domain(), q);
  double sum = 0;
  for (const LeafBlock& leaf : view.leaves()) {
    const std::uint64_t cells = intersection_cell_count(leaf.rect, qr);
    if (cells == 0) continue;
    sum += static_cast<double>(cells) * leaf.noisy_mean;
  }
  return sum;
}

double answer_exact(const CountTensor& t, const RangeQuery& q) {
  const Rect qr = query_rect(t.domain(), q);
  return static_cast<double>(t.sum_cells(qr));
}

namespace {

Rect bbox_union(const Rect& a, const Rect& b) {
  std::vector<Interval> ranges(a.ndim());
  for (std::size_t d = 0; d < a.ndim(); ++d) {
    ranges[d] = {std::min(a.range(d).lo, b.range(d).lo),
                 std::max(a.range(d).hi, b.range(d).hi)};
  }
  return Rect(std::move(ranges));
}

constexpr std::size_t kIndexLeafFanout = 8;

}  // namespace

LeafIndex::LeafIndex(const PrivateView& view) : view_(&view) {
  std::vector<std::uint32_t> ids(view.leaves().size());
  for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i;
  root_ = build(std::move(ids));
}

std::int32_t LeafIndex::build(std::vector<std::uint32_t> ids) {
  Node node;
  node.bbox = view_->leaves()[ids[0]].rect;
  for (std::uint32_t id : ids) {
    node.bbox = bbox_union(node.bbox, view_->leaves()[id].rect);
  }
  if (ids.size() <= kIndexLeafFanout) {
    node.leaf_ids = std::move(ids);
    nodes_.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }
  // Split along the widest bbox dimension at the median leaf.
  std::size_t dim = 0;
  std::uint64_t widest = 0;
  for (std::size_t d = 0; d < node.bbox.ndim(); ++d) {
    if (node.bbox.range(d).length() > widest) {
      widest = node.bbox.range(d).length();
      dim = d;
    }
  }
  const std::size_t mid = ids.size() / 2;
  std::nth_element(ids.begin(), ids.begin() + mid, ids.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return view_->leaves()[a].rect.range(dim).lo <
                            view_->leaves()[b].rect.range(dim).lo;
                   });
  std::vector<std::uint32_t> lo_ids(ids.begin(), ids.begin() + mid);
  std::vector<std::uint32_t> hi_ids(ids.begin() + mid, ids.end());
  const std::int32_t self = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(std::move(node));
  const std::int32_t left = build(std::move(lo_ids));
  const std::int32_t right = build(std::move(hi_ids));
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

void LeafIndex::collect(std::int32_t node_id, const Rect& r,
                        std::vector<std::uint32_t>* out) const {
  const Node& node = nodes_[node_id];
  if (!rects_intersect(node.bbox, r)) return;
  if (node.left < 0) {
    for (std::uint32_t id : node.leaf_ids) {
      if (rects_intersect(view_->leaves()[id].rect, r)) out->push_back(id);
    }
    return;
  }
  collect(node.left, r, out);
  collect(node.right, r, out);
}

std::vector<std::uint32_t> LeafIndex::overlapping(const Rect& r) const {
  std::vector<std::uint32_t> ids;
  if (root_ >= 0) collect(root_, r, &ids);
  std::sort(ids.begin(), ids.end());
  return ids;
}

double LeafIndex::answer(const RangeQuery& q) const {
  const Rect qr = query_rect(view_->domain(), q);
  // Ascending-id accumulation reproduces the linear scan bit for bit.
  double sum = 0;
  for (std::uint32_t id : overlapping(qr)) {
    const LeafBlock& leaf = view_->leaves()[id];
    const std::uint64_t cells = intersection_cell_count(leaf.rect, qr);
    if (cells == 0) continue;
    sum += static_cast<double>(cells) * leaf.noisy_mean;
  }
  return sum;
}

}  // namespace ripost
