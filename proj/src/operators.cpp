#include "framedrag/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace framedrag {

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

DensityMatrix pure_density(const StateVector& psi) {
    return {psi.v * psi.v.adjoint(), psi.basis};
}

void validate_density(const DensityMatrix& rho, double trace_tol, double eig_floor) {
    if (rho.m.rows() != rho.m.cols()) throw std::invalid_argument("density matrix not square");
    if (std::abs(rho.m.trace().real() - 1.0) > trace_tol || std::abs(rho.m.trace().imag()) > trace_tol)
        throw std::invalid_argument("density matrix trace not 1");
    if (hermiticity_defect(rho.m) > 1e-9)
        throw std::invalid_argument("density matrix not hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_floor)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

double ladder_element(double l, double m, LadderSign sign) {
    if (std::abs(m) > l) throw std::domain_error("|m| > l in ladder_element");
    const double a = (sign == LadderSign::plus) ? (l - m) : (l + m);
    const double b = (sign == LadderSign::plus) ? (l + m + 1) : (l - m + 1);
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return std::sqrt(a * b);
}

SingleSphereOps build_single_sphere_operators(const SphereBasis& w) {
    const int d = w.dim();
    SingleSphereOps ops;
    Eigen::MatrixXcd lp = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd lz = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const int j = w.up(i);
        const double f = w.ladder_plus(i);
        if (j >= 0 && f > 0.0) lp(j, i) = f;
        lz(i, i) = w.m_of(i);
    }
    ops.l_plus = {lp, false};
    ops.l_minus = {lp.adjoint(), false};
    ops.l_z = {lz, true};
    ops.l_x = {(lp + lp.adjoint()) / 2.0, true};
    ops.l_y = {(lp - lp.adjoint()) / std::complex<double>(0, 2), true};
    return ops;
}

namespace {

// m_A m_B expanded in anchor pieces, summed small to large
double mamb(const ProductBasis& pb, const Site& sa, const Site& sb) {
    const double ba = pb.a.anchor_base(sa.anchor);
    const double bb = pb.b.anchor_base(sb.anchor);
    const double t_bb = ba * bb;
    const double t_bk = ba * sb.offset;
    const double t_kb = bb * sa.offset;
    const double t_kk = static_cast<double>(sa.offset) * sb.offset;
    return ((t_kk + t_bk) + t_kb) + t_bb;
}

} // namespace

Eigen::MatrixXcd build_coupling_operator(const ProductBasis& pb) {
    const int d = pb.dim();
    Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(d, d);
    for (int ia = 0; ia < pb.a.dim(); ++ia) {
        for (int ib = 0; ib < pb.b.dim(); ++ib) {
            const int src = pb.index(ia, ib);
            o(src, src) += -4.0 * mamb(pb, pb.a.site(ia), pb.b.site(ib));

            // L_{A+} L_{B-}
            {
                const int ja = pb.a.up(ia);
                const int jb = pb.b.down(ib);
                const double f = pb.a.ladder_plus(ia) * pb.b.ladder_minus(ib);
                if (ja >= 0 && jb >= 0 && f != 0.0) o(pb.index(ja, jb), src) += f;
            }
            // L_{A-} L_{B+}
            {
                const int ja = pb.a.down(ia);
                const int jb = pb.b.up(ib);
                const double f = pb.a.ladder_minus(ia) * pb.b.ladder_plus(ib);
                if (ja >= 0 && jb >= 0 && f != 0.0) o(pb.index(ja, jb), src) += f;
            }
        }
    }
    return o;
}

OperatorMatrix build_interaction_hamiltonian(const ProductBasis& pb, double alpha) {
    if (alpha < 0) throw std::invalid_argument("alpha negative");
    Eigen::MatrixXcd h = (-0.5 * alpha) * build_coupling_operator(pb);
    OperatorMatrix out{std::move(h), true};
    if (hermiticity_defect(out.mat) > 1e-12)
        throw std::runtime_error("interaction hamiltonian failed hermiticity check");
    return out;
}

LadderPowerResult apply_ladder_power(const StateVector& psi, Sphere sphere,
                                     LadderSign sign, int q) {
    if (q < 0) throw std::invalid_argument("negative ladder power");
    LadderPowerResult res;
    res.state = psi;
    const ProductBasis& pb = *psi.basis;
    const SphereBasis& w = (sphere == Sphere::A) ? pb.a : pb.b;
    for (int rep = 0; rep < q; ++rep) {
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(pb.dim());
        for (int i = 0; i < pb.dim(); ++i) {
            const std::complex<double> c = res.state.v[i];
            if (c == std::complex<double>(0, 0)) continue;
            const auto [ia, ib] = pb.split(i);
            const int iw = (sphere == Sphere::A) ? ia : ib;
            const double f = (sign == LadderSign::plus) ? w.ladder_plus(iw) : w.ladder_minus(iw);
            if (f == 0.0) continue; // physical ladder edge, amplitude annihilated
            const int jw = (sign == LadderSign::plus) ? w.up(iw) : w.down(iw);
            if (jw < 0) {
                res.truncation_loss += std::norm(c * f); // window edge, dropped
                continue;
            }
            const int j = (sphere == Sphere::A) ? pb.index(jw, ib) : pb.index(ia, jw);
            next[j] += c * f;
        }
        res.state.v = std::move(next);
    }
    return res;
}

} // namespace framedrag
