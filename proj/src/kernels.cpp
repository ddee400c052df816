#include "cylwave/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cylwave::kernels {

#ifndef CYLWAVE_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(CYLWAVE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__)) && defined(__GNUC__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable* pick(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return cpu_has_avx2() ? avx2_table() : nullptr;
  if (name == "auto" || name.empty()) return cpu_has_avx2() ? avx2_table() : &scalar_table();
  return nullptr;
}

const KernelTable* initial() {
  const char* env = std::getenv("CYLWAVE_SIMD");
  if (env) {
    if (const auto* t = pick(env)) return t;
  }
  return pick("auto");
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const auto* t = pick(name);
  if (!t) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace cylwave::kernels
