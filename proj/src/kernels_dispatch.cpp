#include <atomic>
#include <cstdlib>

#include "diamfree/kernels.hpp"

namespace diamfree::kernels {

namespace {
std::atomic<bool> g_force_scalar{false};
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const Ops& active_ops() {
  if (g_force_scalar.load(std::memory_order_relaxed)) return scalar_ops();
  static const Ops* selected = [] {
    const char* env = std::getenv("DIAMFREE_NO_AVX2");
    if (env && env[0] == '1') return &scalar_ops();
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
  }();
  return *selected;
}

}  // namespace diamfree::kernels
