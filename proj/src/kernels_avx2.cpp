// AVX2+FMA variants of the complex vector kernels. Compiled with -mavx2 -mfma
// in its own TU; callers reach these only through the runtime dispatcher.

#include "framedrag/kernels.hpp"

#if defined(FRAMEDRAG_AVX2)

#include <immintrin.h>

namespace framedrag::kernels::avx2 {

namespace {

// complex multiply of two packed pairs (re,im,re,im):
// out = a*x where a is broadcast (ar in even lanes, ai in odd lanes' helper)
inline __m256d cmul(__m256d x, __m256d ar, __m256d ai) {
    __m256d xswap = _mm256_permute_pd(x, 0b0101); // (xi, xr, xi, xr)
    __m256d t = _mm256_mul_pd(xswap, ai);         // (xi*ai, xr*ai, ...)
    return _mm256_fmaddsub_pd(x, ar, t);          // (xr*ar - xi*ai, xi*ar + xr*ai)
}

} // namespace

void zaxpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        yv = _mm256_add_pd(yv, cmul(xv, ar, ai));
        _mm256_storeu_pd(ys + 2 * i, yv);
    }
    for (; i < n; ++i) {
        const double xr = xs[2 * i], xi = xs[2 * i + 1];
        ys[2 * i] += a.real() * xr - a.imag() * xi;
        ys[2 * i + 1] += a.real() * xi + a.imag() * xr;
    }
}

void zscal(std::size_t n, cplx a, cplx* x) {
    double* xs = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        _mm256_storeu_pd(xs + 2 * i, cmul(xv, ar, ai));
    }
    for (; i < n; ++i) {
        const double xr = xs[2 * i], xi = xs[2 * i + 1];
        xs[2 * i] = a.real() * xr - a.imag() * xi;
        xs[2 * i + 1] = a.real() * xi + a.imag() * xr;
    }
}

double znorm2sq(std::size_t n, const cplx* x) {
    const double* xs = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double out = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i)
        out += xs[2 * i] * xs[2 * i] + xs[2 * i + 1] * xs[2 * i + 1];
    return out;
}

cplx zdotc(std::size_t n, const cplx* x, const cplx* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    // accumulate re in even lanes, im in odd lanes
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);              // xr*yr, xi*yi
        __m256d xswap = _mm256_permute_pd(xv, 0b0101);         // xi, xr
        acc_im = _mm256_fmadd_pd(xswap, yv, acc_im);           // xi*yr, xr*yi
    }
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = re4[0] + re4[1] + re4[2] + re4[3];
    double im = (im4[1] - im4[0]) + (im4[3] - im4[2]); // xr*yi - xi*yr
    for (; i < n; ++i) {
        const double xr = xs[2 * i], xi = xs[2 * i + 1];
        const double yr = ys[2 * i], yi = ys[2 * i + 1];
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

} // namespace framedrag::kernels::avx2

#endif // FRAMEDRAG_AVX2
