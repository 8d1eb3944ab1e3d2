#pragma once

// Dense double kernels used by power iteration. Scalar reference versions
// and AVX2 versions; the active set is chosen at runtime.

#include <cstddef>
#include <optional>

namespace ugkms::kernels {

enum class Isa { Scalar, Avx2 };

/// y = A x for a row-major n x n matrix.
using MatvecFn = void (*)(const double* a, const double* x, double* y, std::size_t n);
/// min and max of y[i] / x[i] over entries with x[i] > 0; lo = +inf and
/// hi = -inf when there are none.
using RatioFn = void (*)(const double* y, const double* x, std::size_t n, double* lo, double* hi);

namespace scalar {
void matvec(const double* a, const double* x, double* y, std::size_t n);
void ratio_bounds(const double* y, const double* x, std::size_t n, double* lo, double* hi);
}  // namespace scalar

namespace avx2 {
void matvec(const double* a, const double* x, double* y, std::size_t n);
void ratio_bounds(const double* y, const double* x, std::size_t n, double* lo, double* hi);
}  // namespace avx2

bool avx2_available();
Isa active_isa();
/// Pins the ISA (nullopt restores automatic selection). Requesting Avx2 on a
/// machine without it falls back to Scalar.
void force_isa(std::optional<Isa> isa);
const char* isa_name(Isa isa);

void matvec(const double* a, const double* x, double* y, std::size_t n);
void ratio_bounds(const double* y, const double* x, std::size_t n, double* lo, double* hi);

}  // namespace ugkms::kernels
