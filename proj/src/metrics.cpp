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

#include "ripost/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ripost {

double metric_sensitivity(MetricKind kind) {
  switch (kind) {
    case MetricKind::kSum: return 1.0;
    case MetricKind::kMin: return 1.0;
    case MetricKind::kAggregationError: return 2.0;
  }
  throw InternalError("unknown metric kind");
}

double score_sensitivity(MetricKind kind) {
  return 2.0 * metric_sensitivity(kind);
}

double aggregation_error(const CountTensor& t, const Rect& r) {
  t.domain().validate_rect(r);
  const std::uint64_t n = r.cell_count();
  const double mean =
      static_cast<double>(t.sum_cells(r)) / static_cast<double>(n);
  double ae = 0;
  t.domain().for_each_run(r, [&](std::span<const std::int64_t>,
                                 std::uint64_t start, std::uint64_t len) {
    const std::uint64_t* p = t.cells().data() + start;
    for (std::uint64_t i = 0; i < len; ++i) {
      ae += std::abs(mean - static_cast<double>(p[i]));
    }
  });
  return ae;
}

double metric_value(const CountTensor& t, const Rect& r, MetricKind kind) {
  switch (kind) {
    case MetricKind::kSum:
      return static_cast<double>(t.sum_cells(r));
    case MetricKind::kMin: {
      const auto [empty, nonempty] = t.count_empty_nonempty(r);
      return static_cast<double>(std::min(empty, nonempty));
    }
    case MetricKind::kAggregationError:
      return aggregation_error(t, r);
  }
  throw InternalError("unknown metric kind");
}

std::vector<CutCandidate> enumerate_cuts(const Rect& r) {
  std::vector<CutCandidate> cuts;
  for (std::size_t d = 0; d < r.ndim(); ++d) {
    for (std::int64_t s = r.range(d).lo; s < r.range(d).hi; ++s) {
      cuts.push_back({d, s});
    }
  }
  return cuts;
}

double split_score(const CountTensor& t, const Rect& r, MetricKind metric,
                   const CutCandidate& cut, MinScoreMode min_mode) {
  const auto [left, right] = split_rect(r, cut.dim, cut.cut);
  switch (metric) {
    case MetricKind::kMin: {
      const auto [el, nl] = t.count_empty_nonempty(left);
      const auto [er, nr] = t.count_empty_nonempty(right);
      const double min_l = static_cast<double>(std::min(el, nl));
      const double min_r = static_cast<double>(std::min(er, nr));
      return min_mode == MinScoreMode::kMinOfHalves ? -std::min(min_l, min_r)
                                                    : -(min_l + min_r);
    }
    case MetricKind::kAggregationError:
      return -(aggregation_error(t, left) + aggregation_error(t, right));
    case MetricKind::kSum:
      throw DomainError("Sum has no split score; phase 1 splits use Min");
  }
  throw InternalError("unknown metric kind");
}

namespace {

// Fenwick tree over compressed cell values holding (count, value sum)
// prefixes; answers "how many inserted cells are < m and what do they sum
// to" in O(log V).
class ValueFenwick {
 public:
  explicit ValueFenwick(std::size_t n) : cnt_(n + 1, 0), sum_(n + 1, 0) {}

  void add(std::size_t rank, std::uint64_t value) {
    for (std::size_t i = rank + 1; i < cnt_.size(); i += i & (~i + 1)) {
      cnt_[i] += 1;
      sum_[i] += value;
    }
  }

  // Count and sum of inserted cells with rank < r.
  std::pair<std::uint64_t, std::uint64_t> prefix(std::size_t r) const {
    std::uint64_t c = 0, s = 0;
    for (std::size_t i = r; i > 0; i -= i & (~i + 1)) {
      c += cnt_[i];
      s += sum_[i];
    }
    return {c, s};
  }

 private:
  std::vector<std::uint64_t> cnt_;
  std::vector<std::uint64_t> sum_;
};

// Sum of |S/n - c| over n inserted cells with total S, answered from the
// Fenwick prefix below the mean.
double abs_dev_from_mean(const ValueFenwick& fw,
                         const std::vector<std::uint64_t>& unique,
                         std::uint64_t n, std::uint64_t sum) {
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  const auto it = std::lower_bound(
      unique.begin(), unique.end(), mean,
      [](std::uint64_t v, double m) { return static_cast<double>(v) < m; });
  const std::size_t below = static_cast<std::size_t>(it - unique.begin());
  const auto [cnt_lt, sum_lt] = fw.prefix(below);
  const double above_sum = static_cast<double>(sum - sum_lt);
  const double above_cnt = static_cast<double>(n - cnt_lt);
  return mean * static_cast<double>(cnt_lt) - static_cast<double>(sum_lt) +
         above_sum - mean * above_cnt;
}

// Per-block data shared by the per-dimension sweeps.
struct BlockValues {
  std::vector<std::uint64_t> unique;  // sorted distinct cell values
  // Per dimension: slab -> compressed ranks of the slab's cells, plus the
  // slab's value sum. Slab j of dimension d is the sub-rect with d pinned.
  std::vector<std::vector<std::vector<std::uint32_t>>> slab_ranks;
  std::vector<std::vector<std::uint64_t>> slab_sums;
  std::vector<std::vector<std::uint64_t>> slab_nonempty;
};

BlockValues collect_slabs(const CountTensor& t, const Rect& r) {
  const std::size_t nd = r.ndim();
  BlockValues bv;
  bv.slab_ranks.resize(nd);
  bv.slab_sums.resize(nd);
  bv.slab_nonempty.resize(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    const std::size_t extent = r.range(d).length();
    bv.slab_ranks[d].resize(extent);
    bv.slab_sums[d].assign(extent, 0);
    bv.slab_nonempty[d].assign(extent, 0);
  }

  std::vector<std::uint64_t> values;
  values.reserve(r.cell_count());
  t.domain().for_each_run(r, [&](std::span<const std::int64_t>,
                                 std::uint64_t start, std::uint64_t len) {
    const std::uint64_t* p = t.cells().data() + start;
    for (std::uint64_t i = 0; i < len; ++i) values.push_back(p[i]);
  });
  bv.unique = values;
  std::sort(bv.unique.begin(), bv.unique.end());
  bv.unique.erase(std::unique(bv.unique.begin(), bv.unique.end()),
                  bv.unique.end());

  const std::size_t last = nd - 1;
  std::size_t cell = 0;
  t.domain().for_each_run(r, [&](std::span<const std::int64_t> coords,
                                 std::uint64_t, std::uint64_t len) {
    for (std::uint64_t i = 0; i < len; ++i, ++cell) {
      const std::uint64_t v = values[cell];
      const std::uint32_t rank = static_cast<std::uint32_t>(
          std::lower_bound(bv.unique.begin(), bv.unique.end(), v) -
          bv.unique.begin());
      for (std::size_t d = 0; d < nd; ++d) {
        const std::int64_t coord =
            (d == last) ? coords[d] + static_cast<std::int64_t>(i) : coords[d];
        const std::size_t slab =
            static_cast<std::size_t>(coord - r.range(d).lo);
        bv.slab_ranks[d][slab].push_back(rank);
        bv.slab_sums[d][slab] += v;
        bv.slab_nonempty[d][slab] += (v > 0);
      }
    }
  });
  return bv;
}

}  // namespace

std::vector<double> score_all_cuts(const CountTensor& t, const Rect& r,
                                   MetricKind metric, MinScoreMode min_mode) {
  t.domain().validate_rect(r);
  if (metric == MetricKind::kSum) {
    throw DomainError("Sum has no split score; phase 1 splits use Min");
  }
  const std::size_t nd = r.ndim();
  const BlockValues bv = collect_slabs(t, r);
  const std::uint64_t total_cells = r.cell_count();

  std::vector<double> scores;
  for (std::size_t d = 0; d < nd; ++d) {
    const std::size_t extent = r.range(d).length();
    if (extent < 2) continue;
    const std::uint64_t slab_cells = total_cells / extent;
    const std::size_t ncuts = extent - 1;

    if (metric == MetricKind::kMin) {
      std::uint64_t nonempty_left = 0;
      std::uint64_t nonempty_total = 0;
      for (std::size_t j = 0; j < extent; ++j) {
        nonempty_total += bv.slab_nonempty[d][j];
      }
      for (std::size_t s = 0; s < ncuts; ++s) {
        nonempty_left += bv.slab_nonempty[d][s];
        const std::uint64_t cells_left = slab_cells * (s + 1);
        const std::uint64_t cells_right = total_cells - cells_left;
        const std::uint64_t nonempty_right = nonempty_total - nonempty_left;
        const double min_l = static_cast<double>(
            std::min(cells_left - nonempty_left, nonempty_left));
        const double min_r = static_cast<double>(
            std::min(cells_right - nonempty_right, nonempty_right));
        scores.push_back(min_mode == MinScoreMode::kMinOfHalves
                             ? -std::min(min_l, min_r)
                             : -(min_l + min_r));
      }
      continue;
    }

    // AE: two ordered sweeps, one per direction, each inserting slabs into
    // a Fenwick keyed by compressed value.
    std::vector<double> ae_left(ncuts), ae_right(ncuts);
    {
      ValueFenwick fw(bv.unique.size());
      std::uint64_t n = 0, sum = 0;
      for (std::size_t s = 0; s < ncuts; ++s) {
        for (std::uint32_t rank : bv.slab_ranks[d][s]) {
          fw.add(rank, bv.unique[rank]);
        }
        n += slab_cells;
        sum += bv.slab_sums[d][s];
        ae_left[s] = abs_dev_from_mean(fw, bv.unique, n, sum);
      }
    }
    {
      ValueFenwick fw(bv.unique.size());
      std::uint64_t n = 0, sum = 0;
      for (std::size_t j = extent; j-- > 1;) {
        for (std::uint32_t rank : bv.slab_ranks[d][j]) {
          fw.add(rank, bv.unique[rank]);
        }
        n += slab_cells;
        sum += bv.slab_sums[d][j];
        ae_right[j - 1] = abs_dev_from_mean(fw, bv.unique, n, sum);
      }
    }
    for (std::size_t s = 0; s < ncuts; ++s) {
      scores.push_back(-(ae_left[s] + ae_right[s]));
    }
  }
  return scores;
}

}  // namespace ripost
