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

#include <cstddef>
#include <span>
#include <string>

#include "ripost/rng.hpp"

namespace ripost {

/// NoiseOff replaces Laplace samples with 0 and the exponential mechanism
/// with a lowest-index argmax. Test/benchmark harness only: views built in
/// this mode are stamped non-releasable.
enum class NoiseMode { kStandard, kNoiseOff };

std::string to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string& s);

/// Laplace(0, scale) sample via inverse CDF from one uniform draw.
/// scale must be positive; NoiseOff returns 0.
double laplace(double scale, RngStream& rng, NoiseMode mode);

/// Exponential mechanism: returns index i with probability proportional to
/// exp(eps * scores[i] / (2 * delta_u)), computed with max-shift
/// normalization. NoiseOff returns the lowest-index argmax.
std::size_t exp_mech_select(std::span<const double> scores, double eps,
                            double delta_u, RngStream& rng, NoiseMode mode);

}  // namespace ripost
