#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "framedrag/wigner.hpp"

using namespace framedrag;

TEST_CASE("oracle textbook values and selection rules") {
    CHECK(wigner3j_oracle(1, 1, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(wigner3j_oracle(1, 1, 1, 0, 0, 0) == 0.0);          // odd j-sum at zero m
    CHECK(wigner3j_oracle(2, 1, 1, 1, 0, 0) == 0.0);          // m-sum != 0
    CHECK(wigner3j_oracle(5, 1, 3, 0, 0, 0) == 0.0);          // triangle violated
    CHECK(wigner3j_oracle(0.5, 0.5, 1, 0.5, 0.5, -1) ==
          doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    // column swap parity: odd permutation flips by (-1)^(j1+j2+j3)
    const double a = wigner3j_oracle(2, 1, 2, 1, 0, -1);
    const double b = wigner3j_oracle(1, 2, 2, 0, 1, -1);
    CHECK(a == doctest::Approx(-b).epsilon(1e-13));
}

TEST_CASE("orthogonality sum rule") {
    for (double j1 : {1.0, 2.0, 5.5, 9.0}) {
        for (double j2 : {1.0, 3.5, 7.0}) {
            const double j3 = j1 + j2 - 1.0;
            if (j3 < std::abs(j1 - j2)) continue;
            for (double m3 : {0.0, 1.0}) {
                if (std::abs(m3) > j3) continue;
                if (std::abs(std::round(j3 - m3) - (j3 - m3)) > 1e-9) continue;
                double acc = 0.0;
                for (double m1 = -j1; m1 <= j1 + 0.1; m1 += 1.0) {
                    const double m2 = -m3 - m1;
                    if (std::abs(m2) > j2) continue;
                    const double v = wigner3j_oracle(j1, j2, j3, m1, m2, m3);
                    acc += (2 * j3 + 1) * v * v;
                }
                CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("dipole closed forms match the oracle over the full overlap domain") {
    double worst = 0.0;
    for (int l = 0; l <= 50; ++l) {
        {
            const double o = wigner3j_oracle(1, l, l + 1, 0, 0, 0);
            const double c = wigner3j_dipole_000(l);
            worst = std::max(worst, std::abs(c - o) / std::max(std::abs(o), 1e-300));
        }
        for (int m = -l; m <= l; ++m) {
            const double o1 = wigner3j_oracle(1, l, l + 1, -1, -m, m + 1);
            const double c1 = wigner3j_dipole(l, +1, m);
            worst = std::max(worst, std::abs(c1 - o1) / std::max(std::abs(o1), 1e-300));
            const double o2 = wigner3j_oracle(1, l, l + 1, +1, -m, m - 1);
            const double c2 = wigner3j_dipole(l, -1, m);
            worst = std::max(worst, std::abs(c2 - o2) / std::max(std::abs(o2), 1e-300));
            const double o3 = wigner3j_oracle(1, l, l + 1, 0, -m, m);
            const double c3 = wigner3j_dipole(l, 0, m);
            worst = std::max(worst, std::abs(c3 - o3) / std::max(std::abs(o3), 1e-300));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("dipole forms stay bounded at astronomical l") {
    for (double l : {1e3, 1e9, 1.0923e23}) {
        // combined elements sqrt((2l+1)(2l+3)) * 3j * 3j stay O(1)
        const double m000 = wigner3j_dipole_000(l);
        const double mb = wigner3j_dipole(l, +1, 0.0);
        const double fused = std::sqrt((2 * l + 1) * (2 * l + 3)) * std::abs(m000) * std::abs(mb);
        CHECK(std::isfinite(fused));
        CHECK(fused < 1.0);
        CHECK(fused > 0.01);
    }
    CHECK(wigner3j_dipole(10.0, 0, 11.0) == 0.0); // |m| > l
}

TEST_CASE("oracle rejects out-of-regime arguments") {
    CHECK_THROWS_AS(wigner3j_oracle(80, 1, 81, 0, 0, 0), std::domain_error);
    CHECK_THROWS_AS(wigner3j_oracle(1.2, 1, 1, 0, 0, 0), std::domain_error);
}
