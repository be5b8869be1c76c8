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
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ripost/budget.hpp"
#include "ripost/mechanisms.hpp"
#include "ripost/metrics.hpp"
#include "ripost/tensor.hpp"

namespace ripost {

/// One step of a block's cut history. `coord` is the boundary coordinate
/// inside this child adjacent to the cut (left child records the cut, right
/// child the cut + 1), which makes sibling paths distinct.
struct CutStep {
  std::uint32_t dim = 0;
  std::int64_t coord = 0;
  bool operator==(const CutStep&) const = default;
};

/// A rectangular sub-domain under decomposition.
struct Block {
  Rect rect;
  int phase = 1;
  std::uint32_t depth = 1;         // per-phase; resets on phase transition
  std::uint32_t depth_phase1 = 0;  // convergence depth in phase 1, 0 if none
  std::vector<CutStep> path;
  std::string path_key;            // ledger key / RNG substream basis
};

/// Published leaf: sub-domain plus perturbed mean. The mean is not clamped
/// or rounded; consumers may post-process.
struct LeafBlock {
  Rect rect;
  double noisy_mean = 0;
  std::uint32_t depth_phase1 = 0;
  std::uint32_t depth_phase2 = 0;
  bool operator==(const LeafBlock&) const = default;
};

/// Server-side record of one leaf with its true statistics. Never part of a
/// releasable view; feeds convergence reports.
struct LeafTrace {
  Rect rect;
  double true_mean = 0;
  double true_ae = 0;
  std::uint64_t cells = 0;
  std::uint32_t depth_phase1 = 0;
  std::uint32_t depth_phase2 = 0;
};

/// Depth of a leaf in the overall decomposition tree, root = 1. Phase-2
/// depths restart at 1 on the phase-1 convergence level.
std::uint32_t leaf_total_depth(std::uint32_t depth_phase1,
                               std::uint32_t depth_phase2);

struct ConvergenceReport {
  std::vector<LeafTrace> leaves;

  /// depth -> (#leaves with AE == 0, #leaves with AE > 0).
  std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>>
  depth_histogram() const;

  /// Fraction of leaves whose true AE is positive (mixed leaves).
  double mixed_leaf_fraction() const;
};

struct DecompositionConfig {
  double epsilon = 0.1;
  double alpha = 0.3;
  double beta = 0.4;
  double gamma = 0.9;
  double theta1 = 0.0;
  double theta2 = 0.0;
  SeriesParams series{};
  std::uint32_t skip_k = 0;  // 0 disables the skip schedule
  std::uint64_t seed = 0;
  NoiseMode noise_mode = NoiseMode::kStandard;
  MinScoreMode min_score_mode = MinScoreMode::kMinOfHalves;

  void validate() const;  // throws ConfigError
};

struct DecomposeResult {
  std::vector<LeafBlock> leaves;  // canonical order: lexicographic by rect
  ConvergenceReport report;
  std::unique_ptr<BudgetLedger> ledger;
};

/// Two-phase private decomposition: phase 1 separates empty from populated
/// regions (Sum convergence, Min-score splits), phase 2 refines survivors by
/// aggregation error, then every leaf mean is perturbed with eps_p.
/// Workers > 1 processes disjoint blocks in parallel; the output is
/// identical for any worker count.
DecomposeResult decompose(const CountTensor& t,
                          const DecompositionConfig& config, int workers = 1);

/// Evaluation harness: runs only the aggregation-error phase (phase-2
/// budgets and theta2) from the root. Matches the non-private greedy
/// reference when noise is off.
DecomposeResult decompose_single_phase_ae(const CountTensor& t,
                                          const DecompositionConfig& config,
                                          int workers = 1);

/// Whether the convergence test runs (and is charged) at this depth.
/// Applies at depths 1, skip_k+2, 2*skip_k+3, ...; on skipped depths the
/// block splits unconditionally at no convergence cost.
bool skip_cc_schedule(std::uint32_t depth, std::uint32_t skip_k);

/// Noisy convergence test (metric + Laplace(sensitivity/eps_i) <= theta).
/// Charges eps_i = weight(depth) * component_eps to the block's path.
bool secure_cc(const CountTensor& t, const Block& b, MetricKind metric,
               double theta, double component_eps,
               const DecompositionConfig& config, BudgetLedger& ledger);

/// Exponential-mechanism cut selection over all interior cuts; returns the
/// two children one level deeper. Charges eps_i like secure_cc. The block
/// must have at least two cells.
std::pair<Block, Block> secure_ss(const CountTensor& t, const Block& b,
                                  MetricKind metric, double component_eps,
                                  const DecompositionConfig& config,
                                  BudgetLedger& ledger);

/// Perturbs each block's mean with Laplace((1/cells)/eps_p); the mean of a
/// block changes by exactly 1/cells between neighbouring tensors. Charges
/// eps_p once per leaf path and finalizes it in the ledger.
std::vector<LeafBlock> perturb_leaves(const CountTensor& t,
                                      std::span<const Block> blocks,
                                      double eps_p,
                                      const DecompositionConfig& config,
                                      BudgetLedger& ledger);

/// Derived child block (used by the decomposer and the midpoint baseline).
Block make_child(const Block& parent, Rect rect, std::uint32_t dim,
                 std::int64_t boundary_inside);

/// RNG substream ids, derived from structure rather than traversal order.
enum class StreamOp : std::uint8_t {
  kCc = 1,
  kSs = 2,
  kPerturb = 3,
  kIdentityCell = 4,
  kWorkloadQuery = 5,
};
std::uint64_t substream_id(StreamOp op, int phase,
                           std::span<const CutStep> path);

}  // namespace ripost
