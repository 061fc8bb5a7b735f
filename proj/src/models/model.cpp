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

#include "coalsmc/models/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "coalsmc/core/error.hpp"

namespace coalsmc {

namespace {

double frac(double x) { return x - std::floor(x); }

// Stateless per-generation phase in [0,1), derived from (seed, t).
double phase_hash(std::uint64_t seed, std::uint64_t t) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (t + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

class NeutralModel final : public Model {
 public:
  explicit NeutralModel(int dim) : dim_(dim) {
    if (dim < 1) throw ParameterError("neutral model dimension must be >= 1");
  }

  int state_dim() const override { return dim_; }
  std::string name() const override {
    return dim_ == 1 ? "neutral" : "neutral(d=" + std::to_string(dim_) + ")";
  }

  void sample_initial(RngStream& rng, std::span<double> out) const override {
    for (auto& x : out) x = rng.normal();
  }

  void sample_kernel(int, std::span<const double> prev, RngStream& rng,
                     std::span<double> out) const override {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = prev[i] + rng.normal();
  }

  double initial_potential(std::span<const double>) const override { return 1.0; }

  double potential(int, std::span<const double>,
                   std::span<const double>) const override {
    return 1.0;
  }

  ModelBounds bounds() const override { return {1.0, std::nullopt}; }

 private:
  int dim_;
};

// States on the circle [0,1). Kernel: with probability 1-eps move to a
// wrapped window of width 1/2 around the previous state, else draw fresh
// from Uniform[0,1). Against h = Uniform[0,1) the density is
//   q(x, x') = eps + 2(1-eps) * 1{wrapped |x'-x| <= 1/4},
// so eps <= q <= 2-eps <= 1/eps. Potentials are tent waves with a
// per-generation phase, ranging over exactly [1/a, a].
class BoundedPotentialModel final : public Model {
 public:
  BoundedPotentialModel(double a, double eps, std::uint64_t param_seed)
      : a_(a), eps_(eps), seed_(param_seed) {
    if (!(a >= 1.0) || !std::isfinite(a)) {
      throw ParameterError("bounded model requires a >= 1");
    }
    if (!(eps > 0.0) || !(eps <= 1.0)) {
      throw ParameterError("bounded model requires eps in (0, 1]");
    }
  }

  int state_dim() const override { return 1; }
  std::string name() const override {
    std::ostringstream os;
    os << "bounded(a=" << a_ << ",eps=" << eps_ << ")";
    return os.str();
  }

  void sample_initial(RngStream& rng, std::span<double> out) const override {
    out[0] = rng.uniform();
  }

  void sample_kernel(int, std::span<const double> prev, RngStream& rng,
                     std::span<double> out) const override {
    if (rng.uniform() < 1.0 - eps_) {
      out[0] = frac(prev[0] + 0.5 * (rng.uniform() - 0.5));
    } else {
      out[0] = rng.uniform();
    }
  }

  double initial_potential(std::span<const double> x) const override {
    return tent_potential(x[0], phase_hash(seed_, 0));
  }

  double potential(int t, std::span<const double>,
                   std::span<const double> curr) const override {
    return tent_potential(curr[0], phase_hash(seed_, static_cast<std::uint64_t>(t)));
  }

  ModelBounds bounds() const override { return {a_, eps_}; }

  std::optional<double> kernel_density(int, std::span<const double> prev,
                                       std::span<const double> curr) const override {
    double d = std::abs(curr[0] - prev[0]);
    d = std::min(d, 1.0 - d);  // wrapped distance
    return eps_ + (d <= 0.25 ? 2.0 * (1.0 - eps_) : 0.0);
  }

  std::optional<double> reference_density(std::span<const double> x) const override {
    return (x[0] >= 0.0 && x[0] < 1.0) ? 1.0 : 0.0;
  }

 private:
  double tent_potential(double x, double phi) const {
    const double u = frac(x + phi);
    const double tent = 1.0 - std::abs(2.0 * u - 1.0);  // in [0, 1]
    return 1.0 / a_ + (a_ - 1.0 / a_) * tent;
  }

  double a_;
  double eps_;
  std::uint64_t seed_;
};

class HmmModel final : public Model {
 public:
  explicit HmmModel(DiscreteHmm hmm) : hmm_(std::move(hmm)) { hmm_.validate(); }

  int state_dim() const override { return 1; }
  std::string name() const override {
    return "hmm(m=" + std::to_string(hmm_.m) + ",T=" + std::to_string(hmm_.horizon) + ")";
  }

  void sample_initial(RngStream& rng, std::span<double> out) const override {
    out[0] = static_cast<double>(rng.uniform_below(hmm_.m));
  }

  void sample_kernel(int, std::span<const double> prev, RngStream& rng,
                     std::span<double> out) const override {
    const int from = state_of(prev);
    const double u = rng.uniform();
    double cum = 0.0;
    int to = hmm_.m - 1;
    for (int s = 0; s < hmm_.m; ++s) {
      cum += hmm_.trans(from, s);
      if (u < cum) {
        to = s;
        break;
      }
    }
    out[0] = static_cast<double>(to);
  }

  double initial_potential(std::span<const double> x) const override {
    return hmm_.emit(state_of(x), 0);
  }

  double potential(int t, std::span<const double>,
                   std::span<const double> curr) const override {
    if (t < 0 || t > hmm_.horizon) {
      throw BoundsError("hmm potential queried beyond the observation horizon");
    }
    return hmm_.emit(state_of(curr), t);
  }

  const DiscreteHmm& hmm() const { return hmm_; }

 private:
  int state_of(std::span<const double> x) const {
    const int s = static_cast<int>(std::lround(x[0]));
    if (s < 0 || s >= hmm_.m) throw BoundsError("hmm state out of range");
    return s;
  }

  DiscreteHmm hmm_;
};

}  // namespace

std::optional<double> Model::kernel_density(int, std::span<const double>,
                                            std::span<const double>) const {
  return std::nullopt;
}

std::optional<double> Model::reference_density(std::span<const double>) const {
  return std::nullopt;
}

std::unique_ptr<Model> neutral_model(int dim) {
  return std::make_unique<NeutralModel>(dim);
}

std::unique_ptr<Model> bounded_potential_model(double a, double eps,
                                               std::uint64_t param_seed) {
  return std::make_unique<BoundedPotentialModel>(a, eps, param_seed);
}

void DiscreteHmm::validate() const {
  if (m < 1 || horizon < 0) throw InvalidInputError("hmm needs m >= 1, T >= 0");
  if (transition.size() != static_cast<std::size_t>(m) * m ||
      emission.size() != static_cast<std::size_t>(m) * (horizon + 1)) {
    throw InvalidInputError("hmm table sizes do not match m, T");
  }
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) {
      if (trans(i, j) < 0.0) throw InvalidInputError("negative transition probability");
      row += trans(i, j);
    }
    if (std::abs(row - 1.0) > 1e-9) {
      throw InvalidInputError("hmm transition row does not sum to 1");
    }
  }
  for (double e : emission) {
    if (!(e > 0.0)) throw InvalidInputError("emission likelihoods must be > 0");
  }
}

DiscreteHmm DiscreteHmm::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open hmm file: " + path);
  DiscreteHmm hmm;
  if (!(in >> hmm.m >> hmm.horizon)) {
    throw InvalidInputError("hmm file: expected 'm T' on the first line");
  }
  if (hmm.m < 1 || hmm.m > 1024 || hmm.horizon < 0) {
    throw InvalidInputError("hmm file: implausible m or T");
  }
  hmm.transition.resize(static_cast<std::size_t>(hmm.m) * hmm.m);
  for (auto& x : hmm.transition) {
    if (!(in >> x)) throw InvalidInputError("hmm file: short transition matrix");
  }
  hmm.emission.resize(static_cast<std::size_t>(hmm.m) * (hmm.horizon + 1));
  for (auto& x : hmm.emission) {
    if (!(in >> x)) throw InvalidInputError("hmm file: short emission table");
  }
  hmm.validate();
  return hmm;
}

double hmm_exact_likelihood(const DiscreteHmm& hmm) {
  hmm.validate();
  std::vector<double> alpha(hmm.m);
  for (int s = 0; s < hmm.m; ++s) {
    alpha[s] = hmm.emit(s, 0) / static_cast<double>(hmm.m);
  }
  std::vector<double> next(hmm.m);
  for (int t = 1; t <= hmm.horizon; ++t) {
    for (int s2 = 0; s2 < hmm.m; ++s2) {
      double acc = 0.0;
      for (int s1 = 0; s1 < hmm.m; ++s1) acc += alpha[s1] * hmm.trans(s1, s2);
      next[s2] = acc * hmm.emit(s2, t);
    }
    alpha.swap(next);
  }
  double z = 0.0;
  for (double a : alpha) z += a;
  return z;
}

std::vector<double> hmm_filter_marginal(const DiscreteHmm& hmm, int t) {
  if (t < 0 || t > hmm.horizon) throw BoundsError("filter time out of range");
  std::vector<double> alpha(hmm.m);
  for (int s = 0; s < hmm.m; ++s) {
    alpha[s] = hmm.emit(s, 0) / static_cast<double>(hmm.m);
  }
  std::vector<double> next(hmm.m);
  for (int u = 1; u <= t; ++u) {
    for (int s2 = 0; s2 < hmm.m; ++s2) {
      double acc = 0.0;
      for (int s1 = 0; s1 < hmm.m; ++s1) acc += alpha[s1] * hmm.trans(s1, s2);
      next[s2] = acc * hmm.emit(s2, u);
    }
    alpha.swap(next);
  }
  double z = 0.0;
  for (double a : alpha) z += a;
  for (auto& a : alpha) a /= z;
  return alpha;
}

std::unique_ptr<Model> hmm_model(DiscreteHmm hmm) {
  return std::make_unique<HmmModel>(std::move(hmm));
}

namespace {

// Pulls "key=value" pairs out of "name(k1=v1,k2=v2)".
bool split_args(const std::string& id, const std::string& prefix,
                std::string& args) {
  if (id.rfind(prefix + "(", 0) != 0 || id.back() != ')') return false;
  args = id.substr(prefix.size() + 1, id.size() - prefix.size() - 2);
  return true;
}

double arg_value(const std::string& args, const std::string& key, double fallback,
                 bool* found = nullptr) {
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    if (item.substr(0, eq) == key) {
      if (found) *found = true;
      return std::stod(item.substr(eq + 1));
    }
  }
  if (found) *found = false;
  return fallback;
}

std::string arg_string(const std::string& args, const std::string& key) {
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq != std::string::npos && item.substr(0, eq) == key) {
      return item.substr(eq + 1);
    }
  }
  return {};
}

}  // namespace

std::unique_ptr<Model> parse_model(const std::string& id,
                                   std::uint64_t param_seed) {
  if (id == "neutral") return neutral_model(1);
  std::string args;
  if (split_args(id, "neutral", args)) {
    return neutral_model(static_cast<int>(arg_value(args, "d", 1)));
  }
  if (split_args(id, "bounded", args)) {
    return bounded_potential_model(arg_value(args, "a", 1.0),
                                   arg_value(args, "eps", 1.0), param_seed);
  }
  if (split_args(id, "hmm", args)) {
    const std::string file = arg_string(args, "file");
    if (file.empty()) throw ParameterError("hmm model needs file=PATH");
    return hmm_model(DiscreteHmm::from_file(file));
  }
  throw ParameterError("unknown model id: " + id);
}

}  // namespace coalsmc
