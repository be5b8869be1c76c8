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
#include <optional>
#include <string>
#include <vector>

#include "ripost/decompose.hpp"
#include "ripost/view.hpp"

namespace ripost {

struct WorkloadSpec {
  std::uint64_t seed = 0;
  std::uint32_t count = 0;
};

/// Batch of range queries plus the generator spec that reproduces it.
struct Workload {
  WorkloadSpec spec;
  std::vector<RangeQuery> queries;
};

/// Deterministic workload generation: each query picks a random subset of
/// dimensions; a picked dimension gets a sub-range whose length is uniform
/// over [1, dimension length]. Same (domain, spec) always yields the same
/// queries.
Workload generate_workload(const Domain& domain, const WorkloadSpec& spec);

/// Root mean squared error of the view against exact tensor answers over
/// the workload. Throws ConfigError on an empty workload.
double compute_rmse(const PrivateView& view, const CountTensor& t,
                    const Workload& workload);

/// Relative RMSE: rmse_other / rmse_ours; values above 1 mean the other
/// approach fares worse. A zero denominator yields +infinity (callers warn).
double compute_r_rmse(double rmse_other, double rmse_ours);

/// Evaluation summary written next to decompose/eval outputs.
struct EvalReport {
  std::optional<double> rmse;
  std::optional<double> r_rmse;
  std::uint64_t leaf_count = 0;
  std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>>
      depth_histogram;  // depth -> (#AE==0, #AE>0)
  double mixed_leaf_fraction = 0;
  double eps_total = 0;
  double max_leaf_spend = 0;  // largest per-path ledger total
  double min_slack = 0;       // eps_total - max_leaf_spend at the tightest leaf
};

EvalReport summarize(const DecomposeResult& result);

/// Convergence histogram as CSV: "depth,count_ae_zero,count_ae_positive".
std::string convergence_csv(const ConvergenceReport& report);

}  // namespace ripost
