#include <atomic>

#include "ugkms/kernels.hpp"

namespace ugkms::kernels {

namespace {

std::atomic<int> forced{-1};

Isa detect() {
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

bool avx2_available() {
#if defined(UGKMS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  int f = forced.load(std::memory_order_relaxed);
  if (f >= 0) {
    Isa want = static_cast<Isa>(f);
    return want == Isa::Avx2 && !avx2_available() ? Isa::Scalar : want;
  }
  static const Isa auto_isa = detect();
  return auto_isa;
}

void force_isa(std::optional<Isa> isa) { forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void matvec(const double* a, const double* x, double* y, std::size_t n) {
#ifdef UGKMS_HAVE_AVX2
  if (active_isa() == Isa::Avx2) return avx2::matvec(a, x, y, n);
#endif
  scalar::matvec(a, x, y, n);
}

void ratio_bounds(const double* y, const double* x, std::size_t n, double* lo, double* hi) {
#ifdef UGKMS_HAVE_AVX2
  if (active_isa() == Isa::Avx2) return avx2::ratio_bounds(y, x, n, lo, hi);
#endif
  scalar::ratio_bounds(y, x, n, lo, hi);
}

}  // namespace ugkms::kernels
