#include "framedrag/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace framedrag::kernels {

namespace scalar {

void zaxpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double ar = a.real(), ai = a.imag();
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xs[2 * i], xi = xs[2 * i + 1];
        ys[2 * i] += ar * xr - ai * xi;
        ys[2 * i + 1] += ar * xi + ai * xr;
    }
}

void zscal(std::size_t n, cplx a, cplx* x) {
    const double ar = a.real(), ai = a.imag();
    double* xs = reinterpret_cast<double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xs[2 * i], xi = xs[2 * i + 1];
        xs[2 * i] = ar * xr - ai * xi;
        xs[2 * i + 1] = ar * xi + ai * xr;
    }
}

double znorm2sq(std::size_t n, const cplx* x) {
    const double* xs = reinterpret_cast<const double*>(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) acc += xs[i] * xs[i];
    return acc;
}

cplx zdotc(std::size_t n, const cplx* x, const cplx* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xs[2 * i], xi = xs[2 * i + 1];
        const double yr = ys[2 * i], yi = ys[2 * i + 1];
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

} // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(FRAMEDRAG_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend pick_backend() {
    Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("FRAMEDRAG_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) b = Backend::scalar;
        else if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) b = Backend::avx2;
    }
    return b;
}

struct Dispatch {
    void (*zaxpy)(std::size_t, cplx, const cplx*, cplx*) = scalar::zaxpy;
    void (*zscal)(std::size_t, cplx, cplx*) = scalar::zscal;
    double (*znorm2sq)(std::size_t, const cplx*) = scalar::znorm2sq;
    cplx (*zdotc)(std::size_t, const cplx*, const cplx*) = scalar::zdotc;
    Backend backend = Backend::scalar;
};

const Dispatch& dispatch() {
    static Dispatch d;
    static std::once_flag once;
    std::call_once(once, [] {
        if (pick_backend() == Backend::avx2) {
#if defined(FRAMEDRAG_AVX2)
            d.zaxpy = avx2::zaxpy;
            d.zscal = avx2::zscal;
            d.znorm2sq = avx2::znorm2sq;
            d.zdotc = avx2::zdotc;
            d.backend = Backend::avx2;
#endif
        }
    });
    return d;
}

} // namespace

Backend active_backend() { return dispatch().backend; }

const char* backend_name() {
    return dispatch().backend == Backend::avx2 ? "avx2" : "scalar";
}

void zaxpy(std::size_t n, cplx a, const cplx* x, cplx* y) { dispatch().zaxpy(n, a, x, y); }
void zscal(std::size_t n, cplx a, cplx* x) { dispatch().zscal(n, a, x); }
double znorm2sq(std::size_t n, const cplx* x) { return dispatch().znorm2sq(n, x); }
cplx zdotc(std::size_t n, const cplx* x, const cplx* y) { return dispatch().zdotc(n, x, y); }

} // namespace framedrag::kernels
