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

#include "ripost/mechanisms.hpp"

#include <cmath>
#include <vector>

#include "ripost/error.hpp"

namespace ripost {

std::string to_string(NoiseMode mode) {
  return mode == NoiseMode::kStandard ? "standard" : "noise_off";
}

NoiseMode noise_mode_from_string(const std::string& s) {
  if (s == "standard") return NoiseMode::kStandard;
  if (s == "noise_off") return NoiseMode::kNoiseOff;
  throw ConfigError("unknown noise_mode: " + s);
}

double laplace(double scale, RngStream& rng, NoiseMode mode) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw DomainError("laplace scale must be a positive finite number");
  }
  if (mode == NoiseMode::kNoiseOff) return 0.0;
  // Two-sided inverse CDF from a single uniform draw.
  const double u = rng.next_uniform_open() - 0.5;
  const double sign = (u < 0) ? -1.0 : 1.0;
  return -sign * scale * std::log(1.0 - 2.0 * std::abs(u));
}

std::size_t exp_mech_select(std::span<const double> scores, double eps,
                            double delta_u, RngStream& rng, NoiseMode mode) {
  if (scores.empty()) {
    throw DomainError("exponential mechanism needs at least one candidate");
  }
  if (!(eps > 0) || !(delta_u > 0)) {
    throw DomainError("exponential mechanism needs positive eps and delta_u");
  }
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw InternalError("non-finite score in exponential mechanism");
    }
    if (scores[i] > scores[argmax]) argmax = i;
  }
  if (mode == NoiseMode::kNoiseOff) return argmax;

  // Max-shift keeps every exponent <= 0; shifting all scores by a constant
  // cancels exactly, making the selection distribution shift-invariant.
  const double max_score = scores[argmax];
  std::vector<double> weights(scores.size());
  double total = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    weights[i] = std::exp(eps * (scores[i] - max_score) / (2.0 * delta_u));
    total += weights[i];
  }
  const double draw = rng.next_uniform() * total;
  double cum = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (draw < cum) return i;
  }
  return weights.size() - 1;  // guards against accumulated rounding
}

}  // namespace ripost
