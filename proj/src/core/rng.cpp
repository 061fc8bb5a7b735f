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

#include "coalsmc/core/rng.hpp"

#include <cmath>
#include <limits>

namespace coalsmc {
namespace {

std::uint64_t splitmix_next(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Ziggurat for the standard normal: 256 equal-area layers over
// f(x) = exp(-x^2/2), layer 0 carrying the tail beyond kZigR.
constexpr int kLayers = 256;
constexpr double kZigR = 3.6541528853610088;

struct ZigTables {
  double width_scaled[kLayers];  // layer width * 2^-52
  std::uint64_t kthresh[kLayers];
  double flo[kLayers];
  double fhi[kLayers];
  double area = 0.0;
  double closure = 0.0;  // top-layer area / per-layer area, ~1

  ZigTables() {
    auto f = [](double x) { return std::exp(-0.5 * x * x); };
    const double tail = std::sqrt(M_PI / 2.0) * std::erfc(kZigR / std::sqrt(2.0));
    const double v = kZigR * f(kZigR) + tail;
    area = v;

    double x[kLayers];  // x[1..255] rectangle widths, decreasing
    double fx[kLayers];
    x[1] = kZigR;
    fx[1] = f(kZigR);
    for (int i = 2; i < kLayers; ++i) {
      fx[i] = fx[i - 1] + v / x[i - 1];
      x[i] = std::sqrt(-2.0 * std::log(fx[i]));
    }
    closure = x[kLayers - 1] * (1.0 - fx[kLayers - 1]) / v;

    const double base_width = v / f(kZigR);
    const double scale = 0x1.0p-52;
    width_scaled[0] = base_width * scale;
    kthresh[0] = static_cast<std::uint64_t>((kZigR / base_width) * 0x1.0p52);
    flo[0] = f(kZigR);
    fhi[0] = f(kZigR);
    for (int i = 1; i < kLayers; ++i) {
      width_scaled[i] = x[i] * scale;
      const double edge = (i + 1 < kLayers) ? x[i + 1] : 0.0;
      kthresh[i] = static_cast<std::uint64_t>((edge / x[i]) * 0x1.0p52);
      flo[i] = fx[i];
      fhi[i] = (i + 1 < kLayers) ? fx[i + 1] : 1.0;
    }
  }
};

const ZigTables& zig() {
  static const ZigTables tables;
  return tables;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t t = stream_id + 0x632BE59BD9B4E019ULL;
  t = (t ^ (t >> 30)) * 0xBF58476D1CE4E5B9ULL;
  t = (t ^ (t >> 27)) * 0x94D049BB133111EBULL;
  std::uint64_t s = seed ^ t ^ (t >> 31);
  for (auto& w : s_) w = splitmix_next(s);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 0x9E3779B97F4A7C15ULL;
}

double RngStream::normal() {
  const ZigTables& z = zig();
  for (;;) {
    const std::uint64_t u = next_u64();
    const int idx = static_cast<int>(u & 255u);
    const std::uint64_t rabs = u >> 12;
    if (rabs < z.kthresh[idx]) {
      const double x = static_cast<double>(rabs) * z.width_scaled[idx];
      return (u & 256u) ? -x : x;
    }
    const double out = normal_slow_path(u);
    if (!std::isnan(out)) return out;
  }
}

double RngStream::normal_slow_path(std::uint64_t u) {
  const ZigTables& z = zig();
  const int idx = static_cast<int>(u & 255u);
  const bool neg = (u & 256u) != 0;
  if (idx == 0) {
    // Tail sample beyond kZigR (Marsaglia's method).
    double x, y;
    do {
      x = -std::log(1.0 - uniform()) / kZigR;
      y = -std::log(1.0 - uniform());
    } while (y + y < x * x);
    const double out = kZigR + x;
    return neg ? -out : out;
  }
  const double x = static_cast<double>(u >> 12) * z.width_scaled[idx];
  const double y = z.flo[idx] + uniform() * (z.fhi[idx] - z.flo[idx]);
  if (y < std::exp(-0.5 * x * x)) return neg ? -x : x;
  return std::numeric_limits<double>::quiet_NaN();  // retry
}

double RngStream::exponential() { return -std::log(1.0 - uniform()); }

}  // namespace coalsmc
