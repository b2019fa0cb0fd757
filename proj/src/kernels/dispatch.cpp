// Copyright 2026 The swipt-capacity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "swipt/errors.hpp"
#include "swipt/kernels/kernels.hpp"

namespace swipt::kernels {

#if defined(SWIPT_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(SWIPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* resolve(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return &scalar_table();
    case Backend::kAvx2:
      return avx2_table();
    case Backend::kAuto:
      if (const KernelTable* t = avx2_table()) return t;
      return &scalar_table();
  }
  return &scalar_table();
}

const KernelTable* initial() {
  Backend b = Backend::kAuto;
  if (const char* env = std::getenv("SWIPT_KERNELS")) {
    try {
      b = parse_backend(env);
    } catch (const Error&) {
      b = Backend::kAuto;
    }
  }
  const KernelTable* t = resolve(b);
  return t ? t : &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{initial()};
  return current;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(SWIPT_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select_backend(Backend b) {
  const KernelTable* t = resolve(b);
  if (!t) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

Backend parse_backend(std::string_view name) {
  if (name == "auto") return Backend::kAuto;
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  throw ConfigError("unknown kernel backend '" + std::string(name) + "'");
}

}  // namespace swipt::kernels
