#pragma once

#include <complex>
#include <cstddef>

namespace framedrag::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

// Backend selected at first use from CPUID; FRAMEDRAG_SIMD=scalar|avx2|auto
// overrides. avx2 falls back to scalar when the CPU lacks it.
Backend active_backend();
const char* backend_name();

// y += a*x
void zaxpy(std::size_t n, cplx a, const cplx* x, cplx* y);
// x *= a
void zscal(std::size_t n, cplx a, cplx* x);
// sum |x_i|^2
double znorm2sq(std::size_t n, const cplx* x);
// sum conj(x_i) y_i
cplx zdotc(std::size_t n, const cplx* x, const cplx* y);

// Reference implementations, always available (equivalence tests drive
// these against the dispatched entry points).
namespace scalar {
void zaxpy(std::size_t n, cplx a, const cplx* x, cplx* y);
void zscal(std::size_t n, cplx a, cplx* x);
double znorm2sq(std::size_t n, const cplx* x);
cplx zdotc(std::size_t n, const cplx* x, const cplx* y);
} // namespace scalar

#if defined(FRAMEDRAG_AVX2)
namespace avx2 {
void zaxpy(std::size_t n, cplx a, const cplx* x, cplx* y);
void zscal(std::size_t n, cplx a, cplx* x);
double znorm2sq(std::size_t n, const cplx* x);
cplx zdotc(std::size_t n, const cplx* x, const cplx* y);
} // namespace avx2
#endif

} // namespace framedrag::kernels
