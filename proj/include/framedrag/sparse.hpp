#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace framedrag {

using cplx = std::complex<double>;

// Dense complex matrix in row-major storage. The Lindblad integrator works on
// these so sparse application and RK4 axpy passes run over contiguous rows.
struct RowMatrix {
    int rows = 0, cols = 0;
    std::vector<cplx> d;

    RowMatrix() = default;
    RowMatrix(int r, int c) : rows(r), cols(c), d(static_cast<std::size_t>(r) * c) {}

    cplx* row(int i) { return d.data() + static_cast<std::size_t>(i) * cols; }
    const cplx* row(int i) const { return d.data() + static_cast<std::size_t>(i) * cols; }
    cplx& at(int i, int j) { return d[static_cast<std::size_t>(i) * cols + j]; }
    const cplx& at(int i, int j) const { return d[static_cast<std::size_t>(i) * cols + j]; }
    void set_zero() { std::fill(d.begin(), d.end(), cplx{0, 0}); }

    static RowMatrix from_eigen(const Eigen::MatrixXcd& m);
    Eigen::MatrixXcd to_eigen() const;
};

// out = in^dagger (conjugate transpose, square)
void adjoint_into(const RowMatrix& in, RowMatrix& out);
// a = (a + a^dagger)/2; returns max |a - a^dagger| before symmetrization
double hermitize(RowMatrix& a);
cplx trace(const RowMatrix& a);
double frobenius_norm(const RowMatrix& a);

// CSR sparse complex operator.
struct SparseOp {
    int rows = 0, cols = 0;
    std::vector<int> rptr;  // size rows+1
    std::vector<int> col;
    std::vector<cplx> val;

    static SparseOp from_dense(const Eigen::MatrixXcd& m, double drop_tol = 0.0);
    static SparseOp from_triplets(int rows, int cols,
                                  std::vector<std::tuple<int, int, cplx>> trips);
    std::size_t nnz() const { return val.size(); }
    Eigen::MatrixXcd to_dense() const;
    SparseOp adjoint() const;

    // out += scale * A * X, X and out row-major with matching cols
    void apply_left_add(cplx scale, const RowMatrix& x, RowMatrix& out) const;
    // y += scale * A * x (vector)
    void apply_vec_add(cplx scale, const cplx* x, cplx* y) const;
};

// C = A*B (sparse-sparse, exact structural product)
SparseOp sparse_product(const SparseOp& a, const SparseOp& b);
// C = A + B
SparseOp sparse_add(const SparseOp& a, const SparseOp& b);
// C = scale*A
SparseOp sparse_scale(cplx scale, const SparseOp& a);

} // namespace framedrag
