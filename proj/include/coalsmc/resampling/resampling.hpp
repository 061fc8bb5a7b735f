/*
 * Copyright 2026 The coalsmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "coalsmc/core/rng.hpp"
#include "coalsmc/core/types.hpp"

// Resampling schemes. Each one returns offspring counts that sum to N with
// E[nu_i] = N w_i. Systematic and residual-systematic additionally keep
// every count in {floor(N w_i), floor(N w_i) + 1}.
//
// Slot assignment is separate: assign_slots() applies the uniform
// permutation of offspring slots, so counts-based schemes composed with it
// yield a conditionally-uniform assignment by construction.

namespace coalsmc {

enum class ResamplingScheme {
  kMultinomial,
  kSystematic,
  kStratified,
  kResidualMultinomial,
  kResidualSystematic,
  kResidualStratified,
};

const char* scheme_name(ResamplingScheme scheme);
std::optional<ResamplingScheme> parse_scheme(std::string_view name);

/// True for the schemes whose counts are a constrained stochastic rounding
/// of N w with guaranteed two-point support.
bool has_two_point_support(ResamplingScheme scheme);

/// Draws offspring counts for one generation. w must be normalized.
/// Throws InvalidInputError on an empty weight vector.
OffspringCounts resample_counts(ResamplingScheme scheme,
                                std::span<const double> w, RngStream& rng);
OffspringCounts resample_counts(ResamplingScheme scheme, const WeightVector& w,
                                RngStream& rng);

/// Uniformly random parental-index vector consistent with the counts:
/// every one of the N!/prod(nu_i!) valid assignments is equiprobable.
AncestorAssignment assign_slots(const OffspringCounts& nu, RngStream& rng);

/// One independent Categorical(w) draw per slot.
AncestorAssignment multinomial_assignment(std::span<const double> w,
                                          RngStream& rng);
AncestorAssignment multinomial_assignment(const WeightVector& w,
                                          RngStream& rng);

/// True iff nu_i is floor(N w_i) or floor(N w_i) + 1 for every i.
bool is_two_point_support(const OffspringCounts& nu, std::span<const double> w);

/// Walker alias table for repeated categorical draws from fixed weights.
class AliasTable {
 public:
  /// w normalized, non-empty.
  explicit AliasTable(std::span<const double> w);

  std::int32_t draw(RngStream& rng) const {
    const auto i = static_cast<std::int32_t>(rng.uniform_below(prob_.size()));
    return rng.uniform() < prob_[i] ? i : alias_[i];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::int32_t> alias_;
};

}  // namespace coalsmc
