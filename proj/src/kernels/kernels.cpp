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

#include "coalsmc/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "coalsmc/core/error.hpp"
#include "kernels_impl.hpp"

namespace coalsmc::kernels {

namespace {

struct Table {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*scale)(double*, std::size_t, double);
  MinMax (*minmax)(const double*, std::size_t);
  OffspringMoments (*moments)(const std::int32_t*, std::size_t);
  const char* name;
};

constexpr Table kScalarTable{detail::scalar_sum, detail::scalar_dot,
                             detail::scalar_scale, detail::scalar_minmax,
                             detail::scalar_offspring_moments, "scalar"};

#if defined(COALSMC_HAVE_AVX2)
constexpr Table kAvx2Table{detail::avx2_sum, detail::avx2_dot,
                           detail::avx2_scale, detail::avx2_minmax,
                           detail::avx2_offspring_moments, "avx2"};
#endif

bool avx2_usable() {
#if defined(COALSMC_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table* resolve_auto() {
  if (const char* env = std::getenv("COALSMC_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
#if defined(COALSMC_HAVE_AVX2)
    if (std::strcmp(env, "avx2") == 0 && avx2_usable()) return &kAvx2Table;
#endif
  }
#if defined(COALSMC_HAVE_AVX2)
  if (avx2_usable()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

std::atomic<const Table*> g_table{nullptr};

const Table* table() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    t = resolve_auto();
    g_table.store(t, std::memory_order_release);
  }
  return t;
}

}  // namespace

const char* backend_name() { return table()->name; }

void force_backend(Backend b) {
  switch (b) {
    case Backend::kAuto:
      g_table.store(resolve_auto(), std::memory_order_release);
      return;
    case Backend::kScalar:
      g_table.store(&kScalarTable, std::memory_order_release);
      return;
    case Backend::kAvx2:
#if defined(COALSMC_HAVE_AVX2)
      if (avx2_usable()) {
        g_table.store(&kAvx2Table, std::memory_order_release);
        return;
      }
#endif
      throw ParameterError("avx2 backend not available on this CPU/build");
  }
}

double sum(const double* x, std::size_t n) { return table()->sum(x, n); }

double dot(const double* a, const double* b, std::size_t n) {
  return table()->dot(a, b, n);
}

void scale(double* x, std::size_t n, double factor) {
  table()->scale(x, n, factor);
}

MinMax minmax(const double* x, std::size_t n) { return table()->minmax(x, n); }

OffspringMoments offspring_moments(const std::int32_t* nu, std::size_t n) {
  return table()->moments(nu, n);
}

}  // namespace coalsmc::kernels
