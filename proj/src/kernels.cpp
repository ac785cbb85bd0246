#include "soccer/kernels.hpp"

namespace soccer::kern {
namespace {
bool g_force_scalar = false;
}

bool avx2_supported() {
#if defined(SOCCER_HAVE_AVX2_BUILD) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& ops() {
#if defined(SOCCER_HAVE_AVX2_BUILD)
    if (!g_force_scalar && avx2_supported()) return avx2_ops();
#endif
    return scalar_ops();
}

void force_scalar_backend(bool on) { g_force_scalar = on; }

}  // namespace soccer::kern
