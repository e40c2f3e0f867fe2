#include "framedrag/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "framedrag/kernels.hpp"

namespace framedrag {

RowMatrix RowMatrix::from_eigen(const Eigen::MatrixXcd& m) {
    RowMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < out.cols; ++j)
            out.at(i, j) = m(i, j);
    return out;
}

Eigen::MatrixXcd RowMatrix::to_eigen() const {
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = at(i, j);
    return m;
}

void adjoint_into(const RowMatrix& in, RowMatrix& out) {
    if (out.rows != in.cols || out.cols != in.rows) out = RowMatrix(in.cols, in.rows);
    for (int i = 0; i < in.rows; ++i) {
        const cplx* r = in.row(i);
        for (int j = 0; j < in.cols; ++j) out.at(j, i) = std::conj(r[j]);
    }
}

double hermitize(RowMatrix& a) {
    double defect = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        for (int j = i; j < a.cols; ++j) {
            const cplx u = a.at(i, j), v = std::conj(a.at(j, i));
            defect = std::max(defect, std::abs(u - v));
            const cplx avg = 0.5 * (u + v);
            a.at(i, j) = avg;
            a.at(j, i) = std::conj(avg);
        }
    }
    return defect;
}

cplx trace(const RowMatrix& a) {
    cplx t{0, 0};
    for (int i = 0; i < std::min(a.rows, a.cols); ++i) t += a.at(i, i);
    return t;
}

double frobenius_norm(const RowMatrix& a) {
    return std::sqrt(kernels::znorm2sq(a.d.size(), a.d.data()));
}

SparseOp SparseOp::from_dense(const Eigen::MatrixXcd& m, double drop_tol) {
    std::vector<std::tuple<int, int, cplx>> trips;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j)) > drop_tol)
                trips.emplace_back(i, j, m(i, j));
    return from_triplets(static_cast<int>(m.rows()), static_cast<int>(m.cols()), std::move(trips));
}

SparseOp SparseOp::from_triplets(int rows, int cols,
                                 std::vector<std::tuple<int, int, cplx>> trips) {
    // accumulate duplicates
    std::map<std::pair<int, int>, cplx> acc;
    for (auto& [i, j, v] : trips) {
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw std::out_of_range("sparse triplet outside matrix");
        acc[{i, j}] += v;
    }
    SparseOp s;
    s.rows = rows;
    s.cols = cols;
    s.rptr.assign(rows + 1, 0);
    for (const auto& [ij, v] : acc) ++s.rptr[ij.first + 1];
    for (int i = 0; i < rows; ++i) s.rptr[i + 1] += s.rptr[i];
    s.col.resize(acc.size());
    s.val.resize(acc.size());
    std::vector<int> cursor(s.rptr.begin(), s.rptr.end() - 1);
    for (const auto& [ij, v] : acc) {
        const int p = cursor[ij.first]++;
        s.col[p] = ij.second;
        s.val[p] = v;
    }
    return s;
}

Eigen::MatrixXcd SparseOp::to_dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int p = rptr[i]; p < rptr[i + 1]; ++p)
            m(i, col[p]) = val[p];
    return m;
}

SparseOp SparseOp::adjoint() const {
    std::vector<std::tuple<int, int, cplx>> trips;
    trips.reserve(val.size());
    for (int i = 0; i < rows; ++i)
        for (int p = rptr[i]; p < rptr[i + 1]; ++p)
            trips.emplace_back(col[p], i, std::conj(val[p]));
    return from_triplets(cols, rows, std::move(trips));
}

void SparseOp::apply_left_add(cplx scale, const RowMatrix& x, RowMatrix& out) const {
    if (x.rows != cols || out.rows != rows || out.cols != x.cols)
        throw std::invalid_argument("apply_left_add shape mismatch");
    for (int i = 0; i < rows; ++i) {
        cplx* dst = out.row(i);
        for (int p = rptr[i]; p < rptr[i + 1]; ++p)
            kernels::zaxpy(static_cast<std::size_t>(x.cols), scale * val[p], x.row(col[p]), dst);
    }
}

void SparseOp::apply_vec_add(cplx scale, const cplx* x, cplx* y) const {
    for (int i = 0; i < rows; ++i) {
        cplx acc{0, 0};
        for (int p = rptr[i]; p < rptr[i + 1]; ++p) acc += val[p] * x[col[p]];
        y[i] += scale * acc;
    }
}

SparseOp sparse_product(const SparseOp& a, const SparseOp& b) {
    if (a.cols != b.rows) throw std::invalid_argument("sparse_product shape mismatch");
    std::vector<std::tuple<int, int, cplx>> trips;
    for (int i = 0; i < a.rows; ++i)
        for (int p = a.rptr[i]; p < a.rptr[i + 1]; ++p) {
            const int k = a.col[p];
            for (int q = b.rptr[k]; q < b.rptr[k + 1]; ++q)
                trips.emplace_back(i, b.col[q], a.val[p] * b.val[q]);
        }
    return SparseOp::from_triplets(a.rows, b.cols, std::move(trips));
}

SparseOp sparse_add(const SparseOp& a, const SparseOp& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("sparse_add shape mismatch");
    std::vector<std::tuple<int, int, cplx>> trips;
    for (int i = 0; i < a.rows; ++i)
        for (int p = a.rptr[i]; p < a.rptr[i + 1]; ++p)
            trips.emplace_back(i, a.col[p], a.val[p]);
    for (int i = 0; i < b.rows; ++i)
        for (int p = b.rptr[i]; p < b.rptr[i + 1]; ++p)
            trips.emplace_back(i, b.col[p], b.val[p]);
    return SparseOp::from_triplets(a.rows, a.cols, std::move(trips));
}

SparseOp sparse_scale(cplx scale, const SparseOp& a) {
    SparseOp s = a;
    for (auto& v : s.val) v *= scale;
    return s;
}

} // namespace framedrag
