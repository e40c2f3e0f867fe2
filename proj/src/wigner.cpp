#include "framedrag/wigner.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace framedrag {

namespace {

bool twice_integral(double x) {
    const double t = 2.0 * x;
    return std::abs(t - std::round(t)) < 1e-9;
}

// n! in log space, n as exact small integer
double ln_fact(int n) {
    static std::vector<double> cache{0.0, 0.0};
    if (n < 0) throw std::domain_error("factorial of negative integer");
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(cache.back() + std::log(static_cast<double>(cache.size())));
    return cache[n];
}

int as_int(double x, const char* what) {
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9) throw std::domain_error(std::string("non-integral ") + what);
    return static_cast<int>(r);
}

// parity of the stored double; exact for integral doubles of any magnitude
double minus_one_pow(double e) {
    const double r = std::fmod(std::fmod(e, 2.0) + 2.0, 2.0);
    return r < 0.5 ? 1.0 : -1.0;
}

} // namespace

double wigner3j_oracle(double j1, double j2, double j3,
                       double m1, double m2, double m3) {
    for (double x : {j1, j2, j3, m1, m2, m3})
        if (!twice_integral(x)) throw std::domain_error("j,m must be integral or half-integral");
    if (j1 > 60 || j2 > 60 || j3 > 60)
        throw std::domain_error("oracle regime is |j| <= 60");
    if (j1 < 0 || j2 < 0 || j3 < 0) throw std::domain_error("negative j");

    // selection rules: zero, not an error
    if (std::abs(m1 + m2 + m3) > 1e-9) return 0.0;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
    if (j3 > j1 + j2 || j3 < std::abs(j1 - j2)) return 0.0;
    if (!twice_integral(j1 + j2 + j3) || std::abs(std::round(j1 + j2 + j3) - (j1 + j2 + j3)) > 1e-9)
        return 0.0; // j1+j2+j3 must be an integer
    // m_i and j_i must agree in half-integrality
    for (auto [j, m] : {std::pair{j1, m1}, {j2, m2}, {j3, m3}})
        if (std::abs(std::round(j - m) - (j - m)) > 1e-9) return 0.0;

    const int a1 = as_int(j1 + j2 - j3, "j1+j2-j3");
    const int a2 = as_int(j1 - j2 + j3, "j1-j2+j3");
    const int a3 = as_int(-j1 + j2 + j3, "-j1+j2+j3");
    const int asum = as_int(j1 + j2 + j3 + 1, "j1+j2+j3+1");
    const double ln_delta = 0.5 * (ln_fact(a1) + ln_fact(a2) + ln_fact(a3) - ln_fact(asum));

    const int j1p = as_int(j1 + m1, "j1+m1"), j1m = as_int(j1 - m1, "j1-m1");
    const int j2p = as_int(j2 + m2, "j2+m2"), j2m = as_int(j2 - m2, "j2-m2");
    const int j3p = as_int(j3 + m3, "j3+m3"), j3m = as_int(j3 - m3, "j3-m3");
    const double ln_pref = 0.5 * (ln_fact(j1p) + ln_fact(j1m) + ln_fact(j2p) +
                                  ln_fact(j2m) + ln_fact(j3p) + ln_fact(j3m));

    const int b1 = as_int(j1 + j2 - j3, "b1");          // k <= b1
    const int b2 = j1m;                                  // k <= j1 - m1
    const int b3 = j2p;                                  // k <= j2 + m2
    const int c1 = as_int(j2 - j3 - m1, "c1");           // k >= c1
    const int c2 = as_int(j1 - j3 + m2, "c2");           // k >= c2
    const int k_lo = std::max({0, c1, c2});
    const int k_hi = std::min({b1, b2, b3});
    if (k_lo > k_hi) return 0.0;

    // alternating sum with compensated accumulation on a common scale
    double ln_max = -1e300;
    std::vector<double> ln_terms;
    std::vector<double> signs;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double lt = -(ln_fact(k) + ln_fact(b1 - k) + ln_fact(b2 - k) +
                            ln_fact(b3 - k) + ln_fact(k - c1) + ln_fact(k - c2));
        ln_terms.push_back(lt);
        signs.push_back(k % 2 == 0 ? 1.0 : -1.0);
        ln_max = std::max(ln_max, lt);
    }
    double sum = 0.0, comp = 0.0; // Kahan
    for (size_t i = 0; i < ln_terms.size(); ++i) {
        const double term = signs[i] * std::exp(ln_terms[i] - ln_max);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double phase = minus_one_pow(j1 - j2 - m3);
    return phase * std::exp(ln_delta + ln_pref + ln_max) * sum;
}

double wigner3j_dipole_000(double l) {
    if (l < 0) throw std::domain_error("negative l");
    // (1 l l+1; 0 0 0) = (-1)^(l-1) sqrt((l+1)/((2l+1)(2l+3)))
    return minus_one_pow(l - 1.0) * std::sqrt((l + 1.0) / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}

double wigner3j_dipole(double l, int branch, double m) {
    if (l < 0) throw std::domain_error("negative l");
    if (std::abs(m) > l) return 0.0;
    const double d1 = 2.0 * l + 1.0, d2 = 2.0 * l + 2.0, d3 = 2.0 * l + 3.0;
    switch (branch) {
        case +1: // (1 l l+1; -1 -m m+1) = (-1)^(l-m) sqrt((l+m+1)(l+m+2)/((2l+1)(2l+2)(2l+3)))
            return minus_one_pow(l - m) *
                   std::sqrt((l + m + 1.0) * (l + m + 2.0) / (d1 * d2 * d3));
        case -1: // (1 l l+1; +1 -m m-1) = (-1)^(l-m) sqrt((l-m+1)(l-m+2)/((2l+1)(2l+2)(2l+3)))
            return minus_one_pow(l - m) *
                   std::sqrt((l - m + 1.0) * (l - m + 2.0) / (d1 * d2 * d3));
        case 0: // (1 l l+1; 0 -m m) = (-1)^(l-1-m) sqrt((l+m+1)(l-m+1)/((2l+1)(l+1)(2l+3)))
            return minus_one_pow(l - 1.0 - m) *
                   std::sqrt((l + m + 1.0) * (l - m + 1.0) / (d1 * (l + 1.0) * d3));
        default:
            throw std::domain_error("branch must be -1, 0 or +1");
    }
}

} // namespace framedrag
