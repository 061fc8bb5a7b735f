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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coalsmc/core/rng.hpp"

namespace coalsmc {

/// Bounds a model declares about itself: 1/a <= g_t <= a for the
/// potentials, and eps * h <= q_t <= h / eps for the transition densities
/// against the model's reference density h. Either may be absent.
struct ModelBounds {
  std::optional<double> potential_bound;  // a >= 1
  std::optional<double> mixing_bound;     // eps in (0, 1]
};

/// A state-space model: initial sampler, Markov kernels, potentials.
/// Implementations are immutable after construction and safe to share
/// across threads; all randomness flows through the caller's RngStream.
class Model {
 public:
  virtual ~Model() = default;

  virtual int state_dim() const = 0;
  virtual std::string name() const = 0;

  /// Draw X_0 ~ mu into out (state_dim doubles).
  virtual void sample_initial(RngStream& rng, std::span<double> out) const = 0;

  /// Draw X_t ~ K_t(prev, .) into out, t >= 1.
  virtual void sample_kernel(int t, std::span<const double> prev,
                             RngStream& rng, std::span<double> out) const = 0;

  /// g_0(x).
  virtual double initial_potential(std::span<const double> x) const = 0;

  /// g_t(x_prev, x_curr), t >= 1.
  virtual double potential(int t, std::span<const double> prev,
                           std::span<const double> curr) const = 0;

  virtual ModelBounds bounds() const { return {}; }

  /// Transition density q_t(prev, curr) and reference density h(curr),
  /// available when mixing_bound is declared.
  virtual std::optional<double> kernel_density(int t,
                                               std::span<const double> prev,
                                               std::span<const double> curr) const;
  virtual std::optional<double> reference_density(std::span<const double> x) const;
};

/// Constant potentials (g == 1, uniform weights) over a Gaussian random
/// walk on R^dim.
std::unique_ptr<Model> neutral_model(int dim);

/// Circle-valued model satisfying 1/a <= g <= a and eps h <= q <= h/eps
/// exactly: states live on [0,1) with h = Uniform[0,1); the kernel mixes a
/// fresh uniform with a local wrapped move; potentials are periodic tent
/// functions with per-generation phases derived from param_seed.
/// Throws ParameterError unless a >= 1 and 0 < eps <= 1.
std::unique_ptr<Model> bounded_potential_model(double a, double eps,
                                               std::uint64_t param_seed);

/// Finite HMM with per-time emission likelihoods baked in. The initial
/// state distribution is uniform over the m states.
struct DiscreteHmm {
  int m = 0;        // number of states
  int horizon = 0;  // T; emissions cover t = 0..T
  std::vector<double> transition;  // m x m, row-major
  std::vector<double> emission;    // m x (T+1): emission[s][t]

  double trans(int from, int to) const { return transition[from * m + to]; }
  double emit(int state, int t) const { return emission[state * (horizon + 1) + t]; }

  /// Throws InvalidInputError unless rows sum to 1 (1e-9) and emissions > 0.
  void validate() const;

  /// Plain-text format: "m T", the m x m transition matrix, then the
  /// m x (T+1) emission table.
  static DiscreteHmm from_file(const std::string& path);
};

/// Exact marginal likelihood of the baked-in observation sequence by the
/// forward recursion.
double hmm_exact_likelihood(const DiscreteHmm& hmm);

/// Exact filtering distribution over states at time t (0 <= t <= horizon).
std::vector<double> hmm_filter_marginal(const DiscreteHmm& hmm, int t);

std::unique_ptr<Model> hmm_model(DiscreteHmm hmm);

/// Parses "neutral", "neutral(d=2)", "bounded(a=2,eps=0.5)",
/// "hmm(file=path)". Throws ParameterError on anything else.
std::unique_ptr<Model> parse_model(const std::string& id,
                                   std::uint64_t param_seed);

}  // namespace coalsmc
