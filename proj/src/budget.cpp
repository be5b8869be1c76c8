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

#include "ripost/budget.hpp"

#include <algorithm>
#include <cmath>

namespace ripost {

namespace {
// Absorbs floating-point rounding in cap comparisons; real headroom is the
// series slack, orders of magnitude larger.
constexpr double kCapTolerance = 1e-9;

bool within_cap(double spent, double cap) {
  return spent <= cap * (1.0 + kCapTolerance) + 1e-15;
}
}  // namespace

SeriesParams::SeriesParams(double k_, std::uint32_t offset_)
    : k(k_), offset(offset_) {
  if (!(k > 0) || !std::isfinite(k)) {
    throw ConfigError("series k must be a positive finite number");
  }
  if (static_cast<double>(offset) < std::ceil(k)) {
    throw ConfigError("series offset must be >= ceil(k) to keep the weight "
                      "sum within 1");
  }
}

double get_weight(std::uint64_t depth, const SeriesParams& series) {
  if (depth < 1) throw DomainError("depth must be >= 1");
  const double j = static_cast<double>(depth) + series.offset;
  return series.k / (j * (j + 1.0));
}

double iteration_budget(double component_eps, std::uint64_t depth,
                        const SeriesParams& series) {
  if (!(component_eps > 0)) {
    throw ConfigError("component budget must be positive");
  }
  return component_eps * get_weight(depth, series);
}

BudgetSplit split_budget(double eps, double alpha, double gamma, double beta) {
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw ConfigError("epsilon must be a positive finite number");
  }
  for (auto [name, v] : {std::pair{"alpha", alpha}, {"gamma", gamma},
                         {"beta", beta}}) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw ConfigError(std::string(name) + " must lie in (0,1)");
    }
  }
  // Each level is computed as product + complement-by-subtraction so the
  // partition identities hold exactly in floating point.
  BudgetSplit b;
  b.eps_total = eps;
  b.eps_d = eps * alpha;
  b.eps_p = eps - b.eps_d;
  b.eps_1 = b.eps_d * gamma;
  b.eps_2 = b.eps_d - b.eps_1;
  b.eps_cc_1 = b.eps_1 * beta;
  b.eps_ss_1 = b.eps_1 - b.eps_cc_1;
  b.eps_cc_2 = b.eps_2 * beta;
  b.eps_ss_2 = b.eps_2 - b.eps_cc_2;
  return b;
}

BudgetLedger::BudgetLedger(const BudgetSplit& caps) : caps_(caps) {}

void BudgetLedger::open_root(const std::string& path) {
  std::lock_guard lock(mu_);
  open_.emplace(path, PathSpend{});
}

void BudgetLedger::fork(const std::string& parent,
                        std::span<const std::string> children) {
  std::lock_guard lock(mu_);
  const auto it = open_.find(parent);
  if (it == open_.end()) {
    throw InternalError("ledger fork from unknown path: " + parent);
  }
  const PathSpend inherited = it->second;
  open_.erase(it);
  for (const auto& child : children) open_[child] = inherited;
}

void BudgetLedger::charge(const std::string& path, BudgetComponent component,
                          double amount) {
  if (amount < 0 || !std::isfinite(amount)) {
    throw InternalError("ledger charge must be a non-negative finite amount");
  }
  std::lock_guard lock(mu_);
  const auto it = open_.find(path);
  if (it == open_.end()) {
    throw InternalError("ledger charge to unknown path: " + path);
  }
  PathSpend& s = it->second;
  switch (component) {
    case BudgetComponent::kCc1: s.cc1 += amount; break;
    case BudgetComponent::kSs1: s.ss1 += amount; break;
    case BudgetComponent::kCc2: s.cc2 += amount; break;
    case BudgetComponent::kSs2: s.ss2 += amount; break;
    case BudgetComponent::kPerturb:
      if (s.perturb > 0) {
        throw InternalError("leaf perturbation charged twice on path " + path);
      }
      s.perturb += amount;
      break;
  }
  assert_within(path, s);
}

void BudgetLedger::mark_leaf(const std::string& path) {
  std::lock_guard lock(mu_);
  const auto it = open_.find(path);
  if (it == open_.end()) {
    throw InternalError("ledger leaf mark on unknown path: " + path);
  }
  assert_within(path, it->second);
  leaves_[path] = it->second;
  open_.erase(it);
}

void BudgetLedger::assert_within(const std::string& path,
                                 const PathSpend& s) const {
  const bool ok = within_cap(s.cc1, caps_.eps_cc_1) &&
                  within_cap(s.ss1, caps_.eps_ss_1) &&
                  within_cap(s.cc2, caps_.eps_cc_2) &&
                  within_cap(s.ss2, caps_.eps_ss_2) &&
                  within_cap(s.perturb, caps_.eps_p) &&
                  within_cap(s.total(), caps_.eps_total);
  if (!ok) {
    throw InternalError("privacy budget overcharge on path '" + path + "'");
  }
}

std::size_t BudgetLedger::leaf_count() const {
  std::lock_guard lock(mu_);
  return leaves_.size();
}

double BudgetLedger::max_leaf_total() const {
  std::lock_guard lock(mu_);
  double m = 0;
  for (const auto& [_, s] : leaves_) m = std::max(m, s.total());
  return m;
}

double BudgetLedger::min_slack() const {
  std::lock_guard lock(mu_);
  double slack = caps_.eps_total;
  for (const auto& [_, s] : leaves_) {
    slack = std::min(slack, caps_.eps_total - s.total());
  }
  return slack;
}

}  // namespace ripost
