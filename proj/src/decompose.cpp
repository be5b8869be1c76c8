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

#include "ripost/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace ripost {

std::uint64_t substream_id(StreamOp op, int phase,
                           std::span<const CutStep> path) {
  Hash64 h;
  h.mix(static_cast<std::uint64_t>(op));
  h.mix(static_cast<std::uint64_t>(phase));
  for (const CutStep& s : path) {
    h.mix(s.dim);
    h.mix(static_cast<std::uint64_t>(s.coord));
  }
  return h.value();
}

std::uint32_t leaf_total_depth(std::uint32_t depth_phase1,
                               std::uint32_t depth_phase2) {
  if (depth_phase1 == 0) return depth_phase2;
  return depth_phase1 + depth_phase2 - 1;
}

std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>>
ConvergenceReport::depth_histogram() const {
  std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> h;
  for (const LeafTrace& l : leaves) {
    auto& [zero, positive] =
        h[leaf_total_depth(l.depth_phase1, l.depth_phase2)];
    if (l.true_ae > 0) {
      ++positive;
    } else {
      ++zero;
    }
  }
  return h;
}

double ConvergenceReport::mixed_leaf_fraction() const {
  if (leaves.empty()) return 0.0;
  std::uint64_t mixed = 0;
  for (const LeafTrace& l : leaves) mixed += (l.true_ae > 0);
  return static_cast<double>(mixed) / static_cast<double>(leaves.size());
}

void DecompositionConfig::validate() const {
  split_budget(epsilon, alpha, gamma, beta);  // validates eps and the ratios
  if (!std::isfinite(theta1) || !std::isfinite(theta2)) {
    throw ConfigError("theta thresholds must be finite");
  }
  SeriesParams check(series.k, series.offset);  // re-validates os >= ceil(k)
  (void)check;
}

bool skip_cc_schedule(std::uint32_t depth, std::uint32_t skip_k) {
  if (skip_k == 0) return true;
  return (depth - 1) % (skip_k + 1) == 0;
}

Block make_child(const Block& parent, Rect rect, std::uint32_t dim,
                 std::int64_t boundary_inside) {
  Block child;
  child.rect = std::move(rect);
  child.phase = parent.phase;
  child.depth = parent.depth + 1;
  child.depth_phase1 = parent.depth_phase1;
  child.path = parent.path;
  child.path.push_back({dim, boundary_inside});
  child.path_key = parent.path_key + "/" + std::to_string(dim) + "." +
                   std::to_string(boundary_inside);
  return child;
}

namespace {

BudgetComponent cc_component(int phase) {
  return phase == 1 ? BudgetComponent::kCc1 : BudgetComponent::kCc2;
}
BudgetComponent ss_component(int phase) {
  return phase == 1 ? BudgetComponent::kSs1 : BudgetComponent::kSs2;
}

}  // namespace

bool secure_cc(const CountTensor& t, const Block& b, MetricKind metric,
               double theta, double component_eps,
               const DecompositionConfig& config, BudgetLedger& ledger) {
  const double eps_i = iteration_budget(component_eps, b.depth, config.series);
  const double value = metric_value(t, b.rect, metric);
  RngStream rng(config.seed, substream_id(StreamOp::kCc, b.phase, b.path));
  const double noisy =
      value + laplace(metric_sensitivity(metric) / eps_i, rng,
                      config.noise_mode);
  ledger.charge(b.path_key, cc_component(b.phase), eps_i);
  return noisy <= theta;
}

std::pair<Block, Block> secure_ss(const CountTensor& t, const Block& b,
                                  MetricKind metric, double component_eps,
                                  const DecompositionConfig& config,
                                  BudgetLedger& ledger) {
  if (b.rect.cell_count() < 2) {
    throw DomainError("cannot split a single-cell block");
  }
  const double eps_i = iteration_budget(component_eps, b.depth, config.series);
  const std::vector<CutCandidate> cuts = enumerate_cuts(b.rect);
  const std::vector<double> scores =
      score_all_cuts(t, b.rect, metric, config.min_score_mode);
  RngStream rng(config.seed, substream_id(StreamOp::kSs, b.phase, b.path));
  const std::size_t pick =
      exp_mech_select(scores, eps_i, 2.0 * metric_sensitivity(metric), rng,
                      config.noise_mode);
  ledger.charge(b.path_key, ss_component(b.phase), eps_i);

  const CutCandidate& cut = cuts[pick];
  auto [left_rect, right_rect] = split_rect(b.rect, cut.dim, cut.cut);
  Block left = make_child(b, std::move(left_rect),
                          static_cast<std::uint32_t>(cut.dim), cut.cut);
  Block right = make_child(b, std::move(right_rect),
                           static_cast<std::uint32_t>(cut.dim), cut.cut + 1);
  const std::string children[] = {left.path_key, right.path_key};
  ledger.fork(b.path_key, children);
  return {std::move(left), std::move(right)};
}

std::vector<LeafBlock> perturb_leaves(const CountTensor& t,
                                      std::span<const Block> blocks,
                                      double eps_p,
                                      const DecompositionConfig& config,
                                      BudgetLedger& ledger) {
  if (!(eps_p > 0)) throw ConfigError("perturbation budget must be positive");
  std::vector<LeafBlock> leaves;
  leaves.reserve(blocks.size());
  for (const Block& b : blocks) {
    const std::uint64_t n = b.rect.cell_count();
    const double mean = static_cast<double>(t.sum_cells(b.rect)) /
                        static_cast<double>(n);
    // One cell changing by 1 moves the block mean by exactly 1/n.
    const double scale = (1.0 / static_cast<double>(n)) / eps_p;
    RngStream rng(config.seed,
                  substream_id(StreamOp::kPerturb, b.phase, b.path));
    const double noisy = mean + laplace(scale, rng, config.noise_mode);
    ledger.charge(b.path_key, BudgetComponent::kPerturb, eps_p);
    ledger.mark_leaf(b.path_key);
    leaves.push_back({b.rect, noisy, b.depth_phase1, b.depth});
  }
  return leaves;
}

namespace {

struct PhaseParams {
  int phase = 1;
  MetricKind cc_metric = MetricKind::kSum;
  MetricKind ss_metric = MetricKind::kMin;
  double theta = 0;
  double eps_cc = 0;
  double eps_ss = 0;
};

class PhaseRunner {
 public:
  PhaseRunner(const CountTensor& t, const PhaseParams& pp,
              const DecompositionConfig& cfg, BudgetLedger& ledger)
      : t_(t), pp_(pp), cfg_(cfg), ledger_(ledger) {}

  std::vector<Block> run(std::vector<Block> input, int workers) {
    stack_ = std::move(input);
    if (workers <= 1) {
      while (!stack_.empty()) {
        Block b = std::move(stack_.back());
        stack_.pop_back();
        process(std::move(b));
      }
    } else {
      run_parallel(workers);
    }
    // Canonical order: the converged set is independent of processing
    // order, so sorting makes the output worker-count invariant.
    std::sort(converged_.begin(), converged_.end(),
              [](const Block& a, const Block& b) { return a.rect < b.rect; });
    return std::move(converged_);
  }

 private:
  void process(Block b) {
    bool converged = false;
    if (skip_cc_schedule(b.depth, cfg_.skip_k)) {
      converged = secure_cc(t_, b, pp_.cc_metric, pp_.theta, pp_.eps_cc,
                            cfg_, ledger_);
    }
    if (!converged && b.rect.cell_count() >= 2) {
      auto [left, right] =
          secure_ss(t_, b, pp_.ss_metric, pp_.eps_ss, cfg_, ledger_);
      push(std::move(left));
      push(std::move(right));
      return;
    }
    // Converged, or a single cell that admits no cut (forced convergence,
    // no further charge).
    std::lock_guard lock(converged_mu_);
    converged_.push_back(std::move(b));
  }

  void push(Block b) {
    {
      std::lock_guard lock(mu_);
      stack_.push_back(std::move(b));
    }
    cv_.notify_one();
  }

  void run_parallel(int workers) {
    active_ = 0;
    failure_ = nullptr;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([this] { worker_loop(); });
    }
    for (auto& th : pool) th.join();
    if (failure_) std::rethrow_exception(failure_);
  }

  void worker_loop() {
    std::unique_lock lock(mu_);
    for (;;) {
      cv_.wait(lock, [this] {
        return !stack_.empty() || active_ == 0 || failure_ != nullptr;
      });
      if (failure_ != nullptr) return;
      if (stack_.empty()) {
        if (active_ == 0) {
          cv_.notify_all();
          return;
        }
        continue;
      }
      Block b = std::move(stack_.back());
      stack_.pop_back();
      ++active_;
      lock.unlock();
      try {
        process(std::move(b));
      } catch (...) {
        lock.lock();
        if (failure_ == nullptr) failure_ = std::current_exception();
        --active_;
        cv_.notify_all();
        return;
      }
      lock.lock();
      --active_;
      if (stack_.empty() && active_ == 0) cv_.notify_all();
    }
  }

  const CountTensor& t_;
  const PhaseParams& pp_;
  const DecompositionConfig& cfg_;
  BudgetLedger& ledger_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<Block> stack_;
  int active_ = 0;
  std::exception_ptr failure_;

  std::mutex converged_mu_;
  std::vector<Block> converged_;
};

ConvergenceReport build_report(const CountTensor& t,
                               std::span<const Block> blocks) {
  ConvergenceReport report;
  report.leaves.reserve(blocks.size());
  for (const Block& b : blocks) {
    LeafTrace trace;
    trace.rect = b.rect;
    trace.cells = b.rect.cell_count();
    trace.true_mean = static_cast<double>(t.sum_cells(b.rect)) /
                      static_cast<double>(trace.cells);
    trace.true_ae = aggregation_error(t, b.rect);
    trace.depth_phase1 = b.depth_phase1;
    trace.depth_phase2 = b.depth;
    report.leaves.push_back(std::move(trace));
  }
  return report;
}

DecomposeResult finish(const CountTensor& t, std::vector<Block> blocks,
                       const BudgetSplit& split,
                       const DecompositionConfig& config,
                       std::unique_ptr<BudgetLedger> ledger) {
  DecomposeResult result;
  result.report = build_report(t, blocks);
  result.leaves = perturb_leaves(t, blocks, split.eps_p, config, *ledger);
  result.ledger = std::move(ledger);

  std::vector<Rect> rects;
  rects.reserve(result.leaves.size());
  for (const auto& l : result.leaves) rects.push_back(l.rect);
  const std::string err = check_partition(t.domain(), rects);
  if (!err.empty()) {
    throw InternalError("decomposition is not a partition: " + err);
  }
  return result;
}

}  // namespace

DecomposeResult decompose(const CountTensor& t,
                          const DecompositionConfig& config, int workers) {
  config.validate();
  const BudgetSplit split =
      split_budget(config.epsilon, config.alpha, config.gamma, config.beta);
  auto ledger = std::make_unique<BudgetLedger>(split);

  Block root;
  root.rect = t.domain().full_rect();
  root.phase = 1;
  root.depth = 1;
  ledger->open_root(root.path_key);

  PhaseParams phase1{1, MetricKind::kSum, MetricKind::kMin, config.theta1,
                     split.eps_cc_1, split.eps_ss_1};
  std::vector<Block> survivors =
      PhaseRunner(t, phase1, config, *ledger).run({std::move(root)}, workers);

  for (Block& b : survivors) {
    b.depth_phase1 = b.depth;
    b.depth = 1;  // phase-2 weights restart at the top of the series
    b.phase = 2;
  }

  PhaseParams phase2{2, MetricKind::kAggregationError,
                     MetricKind::kAggregationError, config.theta2,
                     split.eps_cc_2, split.eps_ss_2};
  std::vector<Block> final_blocks =
      PhaseRunner(t, phase2, config, *ledger).run(std::move(survivors),
                                                  workers);
  return finish(t, std::move(final_blocks), split, config, std::move(ledger));
}

DecomposeResult decompose_single_phase_ae(const CountTensor& t,
                                          const DecompositionConfig& config,
                                          int workers) {
  config.validate();
  const BudgetSplit split =
      split_budget(config.epsilon, config.alpha, config.gamma, config.beta);
  auto ledger = std::make_unique<BudgetLedger>(split);

  Block root;
  root.rect = t.domain().full_rect();
  root.phase = 2;
  root.depth = 1;
  root.depth_phase1 = 0;
  ledger->open_root(root.path_key);

  PhaseParams phase{2, MetricKind::kAggregationError,
                    MetricKind::kAggregationError, config.theta2,
                    split.eps_cc_2, split.eps_ss_2};
  std::vector<Block> final_blocks =
      PhaseRunner(t, phase, config, *ledger).run({std::move(root)}, workers);
  return finish(t, std::move(final_blocks), split, config, std::move(ledger));
}

}  // namespace ripost
