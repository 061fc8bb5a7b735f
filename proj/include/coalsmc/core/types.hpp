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

#include <cstdint>
#include <span>
#include <vector>

// Value types shared by every module. Indices are 0-based in memory; all
// external formats (CSV, reports) emit 1-based indices.

namespace coalsmc {

/// Absolute tolerance on |sum(w) - 1| for a normalized weight vector,
/// measured with a compensated sum.
inline constexpr double kWeightSumTol = 1e-12;

/// Normalized particle weights: entries >= 0, summing to 1 within
/// kWeightSumTol, length N >= 1.
class WeightVector {
 public:
  /// Wraps already-normalized weights; throws InvalidInputError if the
  /// invariants fail.
  explicit WeightVector(std::vector<double> w);

  /// Normalizes a vector of non-negative values. Throws
  /// DegenerateWeightsError (generation -1) if the total is not positive.
  static WeightVector normalized(std::vector<double> raw);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const { return w_; }

 private:
  WeightVector() = default;
  std::vector<double> w_;
};

/// Offspring counts for one generation: non-negative, summing to N.
struct OffspringCounts {
  std::vector<std::int32_t> nu;

  std::size_t size() const { return nu.size(); }
  /// Throws InvalidInputError unless entries are >= 0 and sum to size().
  void validate() const;
};

/// Parental index per offspring slot, entries in {0, ..., N-1}.
struct AncestorAssignment {
  std::vector<std::int32_t> a;

  std::size_t size() const { return a.size(); }
};

/// nu[i] = multiplicity of parent i in the assignment. Throws
/// InvalidInputError if any index is out of {0, ..., N-1}.
OffspringCounts counts_from_assignment(const AncestorAssignment& a);

/// A partition of {0, ..., n-1} in canonical form: blocks ordered by their
/// smallest element, elements sorted within each block.
struct Partition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  static Partition singletons(int n);

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  void canonicalize();
  /// True if every block of *this is a union of blocks of finer.
  bool is_coarsening_of(const Partition& finer) const;

  bool operator==(const Partition& other) const = default;
};

/// Unions the blocks of p that map to the same parent index.
/// parent_of_block is aligned with p.blocks. The result is a coarsening
/// of p in canonical form.
Partition merge_by_ancestor(const Partition& p,
                            std::span<const std::int32_t> parent_of_block);

/// Parental index vectors for all generations of one run. Row t maps the
/// generation-(t+1) slots onto their generation-t parents, t in [0, T).
class AncestryMatrix {
 public:
  AncestryMatrix() = default;
  AncestryMatrix(std::int32_t num_particles, std::int32_t horizon);

  std::int32_t particles() const { return n_; }
  std::int32_t horizon() const { return t_; }

  std::span<std::int32_t> row(std::int32_t t) {
    return {data_.data() + static_cast<std::size_t>(t) * n_,
            static_cast<std::size_t>(n_)};
  }
  std::span<const std::int32_t> row(std::int32_t t) const {
    return {data_.data() + static_cast<std::size_t>(t) * n_,
            static_cast<std::size_t>(n_)};
  }

 private:
  std::int32_t n_ = 0;
  std::int32_t t_ = 0;
  std::vector<std::int32_t> data_;
};

}  // namespace coalsmc
