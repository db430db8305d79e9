#include <cstdlib>
#include <cstring>

#include "annuli/errors.hpp"
#include "annuli/kernels.hpp"

namespace annuli::kernels {

extern const Ops scalar_ops;
#ifdef ANNULI_BUILD_AVX2
extern const Ops avx2_ops;
#endif

namespace {

Backend g_backend = Backend::Auto;

bool cpu_has_avx2() {
#if defined(ANNULI_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const Ops* resolve(Backend b) {
  if (b == Backend::Auto) {
    if (const char* env = std::getenv("ANNULI_BACKEND")) {
      if (std::strcmp(env, "scalar") == 0) b = Backend::Scalar;
      else if (std::strcmp(env, "avx2") == 0) b = Backend::Avx2;
    }
  }
  switch (b) {
    case Backend::Scalar:
      return &scalar_ops;
    case Backend::Avx2:
#ifdef ANNULI_BUILD_AVX2
      if (cpu_has_avx2()) return &avx2_ops;
#endif
      throw domain_error("kernels: AVX2 backend requested but unavailable");
    case Backend::Auto:
    default:
#ifdef ANNULI_BUILD_AVX2
      if (cpu_has_avx2()) return &avx2_ops;
#endif
      return &scalar_ops;
  }
}

const Ops*& current() {
  static const Ops* ptr = resolve(Backend::Auto);
  return ptr;
}

}  // namespace

const Ops& ops() { return *current(); }

void set_backend(Backend b) {
  current() = resolve(b);
  g_backend = b;
}

Backend active_backend() { return g_backend; }

bool avx2_available() { return cpu_has_avx2(); }

}  // namespace annuli::kernels
