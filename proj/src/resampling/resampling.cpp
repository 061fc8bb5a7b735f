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

#include "coalsmc/resampling/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coalsmc/core/error.hpp"
#include "coalsmc/core/math.hpp"

namespace coalsmc {

namespace {

// Number of grid points of an increasing sequence that land in each
// cumulative-weight cell [C_{i-1}, C_i), for a grid with unit spacing and
// offset u in [0,1): point k sits at k + u. A point exactly on a boundary
// belongs to the cell starting there. The final cell absorbs whatever is
// left so the counts always sum to `points` despite rounding in C.
void counts_from_unit_grid(std::span<const double> scaled_cum, double u,
                           std::int64_t points,
                           std::span<std::int32_t> out_add) {
  const std::size_t n = scaled_cum.size();
  std::int64_t prev = 0;
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto edge = static_cast<std::int64_t>(std::ceil(scaled_cum[i] - u));
    edge = std::clamp<std::int64_t>(edge, prev, points);
    out_add[i] += static_cast<std::int32_t>(edge - prev);
    assigned += edge - prev;
    prev = edge;
  }
  out_add[n - 1] += static_cast<std::int32_t>(points - assigned);
}

// Stratified variant: one fresh uniform per stratum of width `total/points`.
void counts_from_stratified_grid(std::span<const double> cum, double total,
                                 std::int64_t points, RngStream& rng,
                                 std::span<std::int32_t> out_add) {
  const std::size_t n = cum.size();
  const double stratum = total / static_cast<double>(points);
  std::size_t i = 0;
  for (std::int64_t k = 0; k < points; ++k) {
    const double point = (static_cast<double>(k) + rng.uniform()) * stratum;
    while (i + 1 < n && point >= cum[i]) ++i;
    ++out_add[i];
  }
}

std::vector<double> cumulative(std::span<const double> w) {
  std::vector<double> cum(w.size());
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc.add(w[i]);
    cum[i] = acc.value();
  }
  return cum;
}

OffspringCounts multinomial_counts(std::span<const double> w, RngStream& rng) {
  OffspringCounts out;
  out.nu.assign(w.size(), 0);
  const AliasTable table(w);
  for (std::size_t k = 0; k < w.size(); ++k) ++out.nu[table.draw(rng)];
  return out;
}

OffspringCounts systematic_counts(std::span<const double> w, RngStream& rng) {
  const auto n = static_cast<std::int64_t>(w.size());
  std::vector<double> cum = cumulative(w);
  for (auto& c : cum) c *= static_cast<double>(n);
  OffspringCounts out;
  out.nu.assign(w.size(), 0);
  counts_from_unit_grid(cum, rng.uniform(), n, out.nu);
  return out;
}

OffspringCounts stratified_counts(std::span<const double> w, RngStream& rng) {
  OffspringCounts out;
  out.nu.assign(w.size(), 0);
  const std::vector<double> cum = cumulative(w);
  counts_from_stratified_grid(cum, cum.back(),
                              static_cast<std::int64_t>(w.size()), rng, out.nu);
  return out;
}

enum class ResidualSub { kMultinomial, kSystematic, kStratified };

OffspringCounts residual_counts(std::span<const double> w, RngStream& rng,
                                ResidualSub sub) {
  const auto n = static_cast<std::int64_t>(w.size());
  OffspringCounts out;
  out.nu.assign(w.size(), 0);
  std::vector<double> resid(w.size());
  std::int64_t deterministic = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double scaled = static_cast<double>(n) * w[i];
    const double fl = std::floor(scaled);
    out.nu[i] = static_cast<std::int32_t>(fl);
    deterministic += out.nu[i];
    resid[i] = std::max(scaled - fl, 0.0);
  }
  const std::int64_t r = n - deterministic;
  if (r == 0) return out;

  double resid_total = 0.0;
  for (double x : resid) resid_total += x;
  if (!(resid_total > 0.0)) {
    // All fractional parts rounded to zero; spread the leftover uniformly.
    std::fill(resid.begin(), resid.end(), 1.0);
    resid_total = static_cast<double>(resid.size());
  }

  switch (sub) {
    case ResidualSub::kMultinomial: {
      std::vector<double> probs(resid);
      const double inv = 1.0 / resid_total;
      for (auto& p : probs) p *= inv;
      const AliasTable table(probs);
      for (std::int64_t k = 0; k < r; ++k) ++out.nu[table.draw(rng)];
      break;
    }
    case ResidualSub::kSystematic: {
      std::vector<double> cum(resid.size());
      CompensatedSum acc;
      const double scale = static_cast<double>(r) / resid_total;
      for (std::size_t i = 0; i < resid.size(); ++i) {
        acc.add(resid[i]);
        cum[i] = acc.value() * scale;
      }
      counts_from_unit_grid(cum, rng.uniform(), r, out.nu);
      break;
    }
    case ResidualSub::kStratified: {
      const std::vector<double> cum = cumulative(resid);
      counts_from_stratified_grid(cum, cum.back(), r, rng, out.nu);
      break;
    }
  }
  return out;
}

}  // namespace

const char* scheme_name(ResamplingScheme scheme) {
  switch (scheme) {
    case ResamplingScheme::kMultinomial: return "multinomial";
    case ResamplingScheme::kSystematic: return "systematic";
    case ResamplingScheme::kStratified: return "stratified";
    case ResamplingScheme::kResidualMultinomial: return "residual_multinomial";
    case ResamplingScheme::kResidualSystematic: return "residual_systematic";
    case ResamplingScheme::kResidualStratified: return "residual_stratified";
  }
  return "unknown";
}

std::optional<ResamplingScheme> parse_scheme(std::string_view name) {
  for (auto s : {ResamplingScheme::kMultinomial, ResamplingScheme::kSystematic,
                 ResamplingScheme::kStratified,
                 ResamplingScheme::kResidualMultinomial,
                 ResamplingScheme::kResidualSystematic,
                 ResamplingScheme::kResidualStratified}) {
    if (name == scheme_name(s)) return s;
  }
  return std::nullopt;
}

bool has_two_point_support(ResamplingScheme scheme) {
  return scheme == ResamplingScheme::kSystematic ||
         scheme == ResamplingScheme::kResidualSystematic;
}

OffspringCounts resample_counts(ResamplingScheme scheme,
                                std::span<const double> w, RngStream& rng) {
  if (w.empty()) throw InvalidInputError("resample_counts: empty weights");
  switch (scheme) {
    case ResamplingScheme::kMultinomial:
      return multinomial_counts(w, rng);
    case ResamplingScheme::kSystematic:
      return systematic_counts(w, rng);
    case ResamplingScheme::kStratified:
      return stratified_counts(w, rng);
    case ResamplingScheme::kResidualMultinomial:
      return residual_counts(w, rng, ResidualSub::kMultinomial);
    case ResamplingScheme::kResidualSystematic:
      return residual_counts(w, rng, ResidualSub::kSystematic);
    case ResamplingScheme::kResidualStratified:
      return residual_counts(w, rng, ResidualSub::kStratified);
  }
  throw ParameterError("unknown resampling scheme");
}

OffspringCounts resample_counts(ResamplingScheme scheme, const WeightVector& w,
                                RngStream& rng) {
  return resample_counts(scheme, w.values(), rng);
}

AncestorAssignment assign_slots(const OffspringCounts& nu, RngStream& rng) {
  AncestorAssignment out;
  out.a.reserve(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    for (std::int32_t k = 0; k < nu.nu[i]; ++k) {
      out.a.push_back(static_cast<std::int32_t>(i));
    }
  }
  if (out.a.size() != nu.size()) {
    throw InvalidInputError("assign_slots: counts do not sum to N");
  }
  rng.shuffle(out.a);
  return out;
}

AncestorAssignment multinomial_assignment(std::span<const double> w,
                                          RngStream& rng) {
  if (w.empty()) throw InvalidInputError("multinomial_assignment: empty weights");
  const AliasTable table(w);
  AncestorAssignment out;
  out.a.resize(w.size());
  for (auto& slot : out.a) slot = table.draw(rng);
  return out;
}

AncestorAssignment multinomial_assignment(const WeightVector& w,
                                          RngStream& rng) {
  return multinomial_assignment(w.values(), rng);
}

bool is_two_point_support(const OffspringCounts& nu,
                          std::span<const double> w) {
  if (nu.size() != w.size()) {
    throw InvalidInputError("is_two_point_support: length mismatch");
  }
  const auto n = static_cast<double>(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto fl = static_cast<std::int32_t>(std::floor(n * w[i]));
    if (nu.nu[i] != fl && nu.nu[i] != fl + 1) return false;
  }
  return true;
}

AliasTable::AliasTable(std::span<const double> w) {
  const std::size_t n = w.size();
  if (n == 0) throw InvalidInputError("alias table: empty weights");
  prob_.assign(n, 1.0);
  alias_.resize(n);
  std::vector<double> scaled(n);
  std::vector<std::int32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = w[i] * static_cast<double>(n);
    alias_[i] = static_cast<std::int32_t>(i);
    if (scaled[i] < 1.0) {
      small.push_back(static_cast<std::int32_t>(i));
    } else {
      large.push_back(static_cast<std::int32_t>(i));
    }
  }
  while (!small.empty() && !large.empty()) {
    const std::int32_t s = small.back();
    small.pop_back();
    const std::int32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Entries left on either stack have bucket mass 1 up to rounding.
}

}  // namespace coalsmc
