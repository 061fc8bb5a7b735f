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

#include "coalsmc/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "coalsmc/core/error.hpp"
#include "coalsmc/kernels/kernels.hpp"

namespace coalsmc {

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw InvalidInputError("weight vector must be non-empty");
  for (double x : w_) {
    if (!(x >= 0.0)) throw InvalidInputError("weights must be non-negative");
  }
  const double total = kernels::sum(w_.data(), w_.size());
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw InvalidInputError("weights sum to " + std::to_string(total) +
                            ", expected 1 within tolerance");
  }
}

WeightVector WeightVector::normalized(std::vector<double> raw) {
  if (raw.empty()) throw InvalidInputError("weight vector must be non-empty");
  for (double x : raw) {
    if (!(x >= 0.0)) throw InvalidInputError("weights must be non-negative");
  }
  const double total = kernels::sum(raw.data(), raw.size());
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateWeightsError(-1, "weight normalization total is not positive");
  }
  kernels::scale(raw.data(), raw.size(), 1.0 / total);
  WeightVector out;
  out.w_ = std::move(raw);
  return out;
}

void OffspringCounts::validate() const {
  std::int64_t total = 0;
  for (std::int32_t c : nu) {
    if (c < 0) throw InvalidInputError("offspring count is negative");
    total += c;
  }
  if (total != static_cast<std::int64_t>(nu.size())) {
    throw InvalidInputError("offspring counts sum to " + std::to_string(total) +
                            ", expected " + std::to_string(nu.size()));
  }
}

OffspringCounts counts_from_assignment(const AncestorAssignment& a) {
  const auto n = static_cast<std::int32_t>(a.size());
  OffspringCounts out;
  out.nu.assign(a.size(), 0);
  for (std::int32_t parent : a.a) {
    if (parent < 0 || parent >= n) {
      throw InvalidInputError("parental index " + std::to_string(parent) +
                              " out of range for N=" + std::to_string(n));
    }
    ++out.nu[parent];
  }
  return out;
}

Partition Partition::singletons(int n) {
  Partition p;
  p.n = n;
  p.blocks.reserve(n);
  for (int i = 0; i < n; ++i) p.blocks.push_back({i});
  return p;
}

void Partition::canonicalize() {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
}

bool Partition::is_coarsening_of(const Partition& finer) const {
  if (n != finer.n) return false;
  // element -> block id in *this
  std::vector<int> owner(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int e : blocks[b]) {
      if (e < 0 || e >= n) return false;
      owner[e] = static_cast<int>(b);
    }
  }
  for (const auto& fb : finer.blocks) {
    if (fb.empty()) return false;
    const int o = owner[fb.front()];
    for (int e : fb) {
      if (owner[e] != o) return false;
    }
  }
  return true;
}

Partition merge_by_ancestor(const Partition& p,
                            std::span<const std::int32_t> parent_of_block) {
  if (parent_of_block.size() != p.blocks.size()) {
    throw InvalidInputError("one parent index required per block");
  }
  std::unordered_map<std::int32_t, std::vector<int>> groups;
  groups.reserve(p.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    auto& merged = groups[parent_of_block[b]];
    merged.insert(merged.end(), p.blocks[b].begin(), p.blocks[b].end());
  }
  Partition out;
  out.n = p.n;
  out.blocks.reserve(groups.size());
  for (auto& [parent, members] : groups) out.blocks.push_back(std::move(members));
  out.canonicalize();
  return out;
}

AncestryMatrix::AncestryMatrix(std::int32_t num_particles, std::int32_t horizon)
    : n_(num_particles), t_(horizon) {
  if (num_particles < 1 || horizon < 0) {
    throw InvalidInputError("ancestry matrix needs N >= 1 and T >= 0");
  }
  data_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(t_), 0);
}

}  // namespace coalsmc
