#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "framedrag/kernels.hpp"
#include "framedrag/sparse.hpp"

using namespace framedrag;
namespace kn = framedrag::kernels;

namespace {

std::vector<kn::cplx> random_vec(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<kn::cplx> v(n);
    for (auto& x : v) x = {u(rng), u(rng)};
    return v;
}

Eigen::MatrixXcd random_mat(int r, int c, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = {u(rng), u(rng)};
    return m;
}

} // namespace

TEST_CASE("dispatched kernels match the scalar reference") {
    for (std::size_t n : {0u, 1u, 3u, 8u, 33u, 1000u}) {
        auto x = random_vec(n, 7 + static_cast<unsigned>(n));
        auto y0 = random_vec(n, 90 + static_cast<unsigned>(n));
        const kn::cplx a{0.3, -1.2};

        auto y_ref = y0;
        kn::scalar::zaxpy(n, a, x.data(), y_ref.data());
        auto y = y0;
        kn::zaxpy(n, a, x.data(), y.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y[i] - y_ref[i]) <= 1e-14 * (1.0 + std::abs(y_ref[i])));

        auto s_ref = x;
        kn::scalar::zscal(n, a, s_ref.data());
        auto s = x;
        kn::zscal(n, a, s.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(s[i] - s_ref[i]) <= 1e-14 * (1.0 + std::abs(s_ref[i])));

        const double n_ref = kn::scalar::znorm2sq(n, x.data());
        CHECK(kn::znorm2sq(n, x.data()) == doctest::Approx(n_ref).epsilon(1e-13));

        const kn::cplx d_ref = kn::scalar::zdotc(n, x.data(), y0.data());
        const kn::cplx d = kn::zdotc(n, x.data(), y0.data());
        CHECK(std::abs(d - d_ref) <= 1e-13 * (1.0 + std::abs(d_ref)));
    }
}

#if defined(FRAMEDRAG_AVX2)
TEST_CASE("avx2 kernels match scalar when the cpu has them") {
    if (kn::active_backend() != kn::Backend::avx2) return; // cpu without avx2
    for (std::size_t n : {1u, 2u, 5u, 64u, 257u}) {
        auto x = random_vec(n, 11 + static_cast<unsigned>(n));
        auto y0 = random_vec(n, 51 + static_cast<unsigned>(n));
        const kn::cplx a{-0.7, 0.25};
        auto y_s = y0, y_v = y0;
        kn::scalar::zaxpy(n, a, x.data(), y_s.data());
        kn::avx2::zaxpy(n, a, x.data(), y_v.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y_s[i] - y_v[i]) <= 1e-14 * (1.0 + std::abs(y_s[i])));
        CHECK(kn::avx2::znorm2sq(n, x.data()) ==
              doctest::Approx(kn::scalar::znorm2sq(n, x.data())).epsilon(1e-13));
        const auto ds = kn::scalar::zdotc(n, x.data(), y0.data());
        const auto dv = kn::avx2::zdotc(n, x.data(), y0.data());
        CHECK(std::abs(ds - dv) <= 1e-13 * (1.0 + std::abs(ds)));
    }
}
#endif

TEST_CASE("backend name reports the active choice") {
    const std::string name = kn::backend_name();
    CHECK((name == "avx2" || name == "scalar"));
}

TEST_CASE("sparse ops reproduce dense algebra") {
    const auto m = random_mat(17, 17, 3);
    const auto sp = SparseOp::from_dense(m);
    CHECK((sp.to_dense() - m).cwiseAbs().maxCoeff() == 0.0);

    // apply_left_add vs dense product
    const auto x = random_mat(17, 9, 4);
    RowMatrix xr = RowMatrix::from_eigen(x);
    RowMatrix out(17, 9);
    sp.apply_left_add({1.0, 0.5}, xr, out);
    const Eigen::MatrixXcd want = kn::cplx{1.0, 0.5} * m * x;
    CHECK((out.to_eigen() - want).cwiseAbs().maxCoeff() < 1e-12);

    // product and adjoint
    const auto b = random_mat(17, 17, 5);
    const auto sb = SparseOp::from_dense(b);
    CHECK((sparse_product(sp, sb).to_dense() - m * b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sp.adjoint().to_dense() - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sparse_add(sp, sb).to_dense() - (m + b)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("row-matrix helpers") {
    auto m = random_mat(8, 8, 6);
    RowMatrix r = RowMatrix::from_eigen(m);
    CHECK(std::abs(trace(r) - m.trace()) < 1e-14);

    RowMatrix adj(8, 8);
    adjoint_into(r, adj);
    CHECK((adj.to_eigen() - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    const double defect = hermitize(r);
    CHECK(defect > 0.0); // random matrix is not Hermitian
    const Eigen::MatrixXcd h = r.to_eigen();
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}
