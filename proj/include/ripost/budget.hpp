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
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ripost/error.hpp"

namespace ripost {

/// Parameters of the depth-weight series w_i = k / ((i+os)(i+os+1)).
/// The total mass sum_{i>=1} w_i = k/(os+1) stays <= 1 because construction
/// enforces os >= ceil(k).
struct SeriesParams {
  double k = 4.0;
  std::uint32_t offset = 4;

  SeriesParams() = default;
  SeriesParams(double k_, std::uint32_t offset_);

  /// Infinite-sum mass k/(os+1); the per-component budget fraction that can
  /// ever be consumed along one path.
  double total_mass() const { return k / (offset + 1.0); }

  bool operator==(const SeriesParams&) const = default;
};

/// Weight of one depth level, strictly decreasing in depth. depth >= 1.
double get_weight(std::uint64_t depth, const SeriesParams& series);

/// Budget of one convergence/split test at the given depth:
/// component_eps * get_weight(depth).
double iteration_budget(double component_eps, std::uint64_t depth,
                        const SeriesParams& series);

/// Four-way budget split. Partition identities hold exactly:
/// eps_p + eps_d == eps_total, eps_1 + eps_2 == eps_d,
/// eps_cc_i + eps_ss_i == eps_i.
struct BudgetSplit {
  double eps_total = 0;
  double eps_p = 0;   // leaf perturbation
  double eps_d = 0;   // decomposition
  double eps_1 = 0;   // phase 1
  double eps_2 = 0;   // phase 2
  double eps_cc_1 = 0, eps_ss_1 = 0;
  double eps_cc_2 = 0, eps_ss_2 = 0;
};

/// alpha splits eps into perturbation/decomposition, gamma splits the
/// decomposition budget across the two phases, beta splits each phase
/// between the convergence test and the split selection.
/// All three must lie in (0,1); eps must be positive.
BudgetSplit split_budget(double eps, double alpha, double gamma, double beta);

enum class BudgetComponent { kCc1, kSs1, kCc2, kSs2, kPerturb };

/// Cumulative spend of one root-to-block path, per component.
struct PathSpend {
  double cc1 = 0, ss1 = 0, cc2 = 0, ss2 = 0, perturb = 0;
  double total() const { return cc1 + ss1 + cc2 + ss2 + perturb; }
};

/// Runtime accounting of sequential composition along every decomposition
/// path. Each block path holds the cumulative spend inherited from its
/// ancestors; sibling paths never share charges (parallel composition).
/// Any charge that would exceed a component cap is an implementation bug
/// and raises InternalError.
class BudgetLedger {
 public:
  explicit BudgetLedger(const BudgetSplit& caps);

  /// Registers the root path with zero spend.
  void open_root(const std::string& path);

  /// Copies the parent's cumulative spend onto each child path and retires
  /// the parent entry (its spend lives on through the children).
  void fork(const std::string& parent,
            std::span<const std::string> children);

  /// Adds `amount` to one component of `path`, then asserts the caps.
  void charge(const std::string& path, BudgetComponent component,
              double amount);

  /// Finalizes a leaf path: asserts all invariants and records the spend.
  /// The open entry moves into the completed-leaf set.
  void mark_leaf(const std::string& path);

  const BudgetSplit& caps() const { return caps_; }
  std::size_t leaf_count() const;
  const std::map<std::string, PathSpend>& leaves() const { return leaves_; }

  /// Largest per-path total across completed leaves.
  double max_leaf_total() const;

  /// Smallest unspent fraction of eps_total across completed leaves.
  double min_slack() const;

 private:
  void assert_within(const std::string& path, const PathSpend& s) const;

  BudgetSplit caps_;
  mutable std::mutex mu_;
  std::map<std::string, PathSpend> open_;
  std::map<std::string, PathSpend> leaves_;
};

}  // namespace ripost
