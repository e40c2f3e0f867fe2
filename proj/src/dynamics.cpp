#include "framedrag/dynamics.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "framedrag/entanglement.hpp"

namespace framedrag {

namespace {

Eigen::VectorXcd sphere_ket(const SphereBasis& w, AnchoredM m, bool cat) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(w.dim());
    const int i1 = w.locate(0, m);
    if (i1 < 0) throw std::invalid_argument("anchor outside window");
    v[i1] += 1.0;
    if (cat) {
        const int i2 = w.locate(0, m.negated());
        if (i2 < 0) throw std::invalid_argument("negated anchor outside window");
        v[i2] += 1.0; // i2 == i1 at m = 0, the kets coincide
    }
    v.normalize();
    return v;
}

StateVector product_state(const ProductBasisPtr& pb, const Eigen::VectorXcd& ka,
                          const Eigen::VectorXcd& kb) {
    StateVector s;
    s.basis = pb;
    s.v = Eigen::VectorXcd(pb->dim());
    for (int ia = 0; ia < pb->a.dim(); ++ia)
        for (int ib = 0; ib < pb->b.dim(); ++ib)
            s.v[pb->index(ia, ib)] = ka[ia] * kb[ib];
    return s;
}

double edge_population(const StateVector& psi) {
    const ProductBasis& pb = *psi.basis;
    double pop = 0.0;
    for (int i = 0; i < pb.dim(); ++i) {
        const auto [ia, ib] = pb.split(i);
        if (pb.a.artificial_edge(ia) || pb.b.artificial_edge(ib)) pop += std::norm(psi.v[i]);
    }
    return pop;
}

} // namespace

StateVector initial_cat_state(const ProductBasisPtr& pb, AnchoredM m_a, AnchoredM m_b) {
    return product_state(pb, sphere_ket(pb->a, m_a, true), sphere_ket(pb->b, m_b, true));
}

StateVector initial_eigenstate(const ProductBasisPtr& pb, AnchoredM m_a, AnchoredM m_b) {
    return product_state(pb, sphere_ket(pb->a, m_a, false), sphere_ket(pb->b, m_b, false));
}

namespace {

// connected components of the coupling graph; the interaction conserves
// m_A+m_B, so blocks stay small and the eigenproblem factorizes exactly
std::vector<std::vector<int>> coupling_components(const Eigen::MatrixXcd& h) {
    const int d = static_cast<int>(h.rows());
    std::vector<int> parent(d);
    for (int i = 0; i < d; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (h(i, j) != std::complex<double>(0, 0) || h(j, i) != std::complex<double>(0, 0)) {
                const int a = find(i), b = find(j);
                if (a != b) parent[a] = b;
            }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < d; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

} // namespace

EvolutionResult evolve_exact(const OperatorMatrix& h, const StateVector& psi0,
                             const std::vector<double>& times) {
    if (!h.hermitian || hermiticity_defect(h.mat) > 1e-10)
        throw std::invalid_argument("evolve_exact needs a Hermitian generator");
    if (h.mat.rows() != psi0.v.size())
        throw std::invalid_argument("H/state dimension mismatch");
    for (size_t k = 1; k < times.size(); ++k)
        if (times[k] < times[k - 1]) throw std::invalid_argument("times not ascending");

    // subtract the mean diagonal: a global phase, keeps eigenphases small
    const int d = static_cast<int>(h.mat.rows());
    const double shift = h.mat.real().trace() / d;

    const auto components = coupling_components(h.mat);

    EvolutionResult out;
    out.times = times;
    out.window_half_width = psi0.basis->a.half_width();
    for (size_t k = 0; k < times.size(); ++k) {
        StateVector st;
        st.basis = psi0.basis;
        st.v = Eigen::VectorXcd::Zero(d);
        out.states.push_back(std::move(st));
    }

    for (const auto& comp : components) {
        const int n = static_cast<int>(comp.size());
        Eigen::VectorXcd c0(n);
        bool occupied = false;
        for (int i = 0; i < n; ++i) {
            c0[i] = psi0.v[comp[i]];
            occupied = occupied || c0[i] != std::complex<double>(0, 0);
        }
        if (!occupied) continue;
        Eigen::MatrixXcd hb(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) hb(i, j) = h.mat(comp[i], comp[j]);
        hb.diagonal().array() -= shift;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hb);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
        const Eigen::VectorXcd cb = es.eigenvectors().adjoint() * c0;
        for (size_t k = 0; k < times.size(); ++k) {
            Eigen::VectorXcd phase(n);
            for (int i = 0; i < n; ++i)
                phase[i] = std::polar(1.0, -es.eigenvalues()[i] * times[k]) * cb[i];
            const Eigen::VectorXcd vb = es.eigenvectors() * phase;
            for (int i = 0; i < n; ++i) out.states[k].v[comp[i]] = vb[i];
        }
    }

    for (size_t k = 0; k < times.size(); ++k) {
        const double drift = std::abs(out.states[k].v.norm() - psi0.v.norm());
        if (drift > 1e-9) throw std::runtime_error("unitarity drift above 1e-9");
        out.truncation_loss.push_back(edge_population(out.states[k]));
    }
    return out;
}

PerturbativeResult perturbative_state(const StateVector& psi0, double alpha, double t,
                                      double g_max) {
    const ProductBasis& pb = *psi0.basis;
    const Eigen::MatrixXcd o = build_coupling_operator(pb);
    const std::complex<double> i_half_at{0.0, 0.5 * alpha * t};
    const double att = alpha * t;
    const Eigen::VectorXcd o_psi = o * psi0.v;
    const Eigen::VectorXcd oo_psi = o * o_psi;

    PerturbativeResult res;
    res.state.basis = psi0.basis;
    res.state.v = psi0.v + i_half_at * o_psi - (att * att / 8.0) * oo_psi;

    const double g = 0.5 * alpha * t * pb.a.l0() * pb.b.l0();
    res.guard_ok = std::abs(g) <= g_max;
    return res;
}

double entropy_closed_form(double g, double kappa) {
    if (kappa < 0 || g < 0 || kappa > g)
        throw std::domain_error("entropy_closed_form needs 0 <= kappa <= g");
    const double arg = 1.0 - 2.0 * g * g + 4.0 * g * kappa - 18.0 * kappa * kappa;
    if (arg <= 0.0) throw std::out_of_range("entropy_closed_form outside its validity regime");
    // x^2 log2(c x) continuously extended to 0 at x = 0
    auto xxlog = [](double x, double c) { return x > 0.0 ? x * x * std::log2(c * x) : 0.0; };
    const double t1 = (2.0 * g * g - 4.0 * g * kappa + 18.0 * kappa * kappa - 1.0) * std::log2(arg);
    const double t2 = -4.0 * xxlog(g - kappa, 1.0);
    const double t3 = -32.0 * xxlog(kappa, 4.0);
    return t1 + t2 + t3;
}

std::vector<EntropyCurveRow> entropy_curve(const ExperimentConfig& config,
                                           const std::vector<double>& m_fractions,
                                           const std::vector<double>& t_grid,
                                           const EntropyCurveOptions& opts,
                                           int* width_used) {
    if (t_grid.empty()) throw std::invalid_argument("empty time grid");
    const DerivedScales scales = derive_scales(config);
    const double l = scales.l_a;
    std::vector<EntropyCurveRow> rows;
    int widest = opts.initial_half_width;

    for (double frac : m_fractions) {
        if (frac < 0.0 || frac > 1.0) throw std::invalid_argument("m fraction outside [0,1]");
        // anchor the windows at the nearest grid value of frac*l
        AnchoredM m{0.0, 0};
        if (frac == 1.0) m = {l, 0};
        else if (frac > 0.0) m = {2.0 * l <= 4096.0 ? std::round(frac * l) : frac * l, 0};
        const double m_value = m.value();

        int w = opts.initial_half_width;
        double s_prev = -1.0;
        std::vector<double> s_exact(t_grid.size(), 0.0), loss(t_grid.size(), 0.0);
        while (true) {
            std::vector<AnchoredM> anchors = {m};
            if (opts.prep == Preparation::superposition && m_value != 0.0)
                anchors.push_back(m.negated());
            SphereBasis wa = SphereBasis::windows(l, anchors, w);
            ProductBasisPtr pb = make_product_basis(wa, wa);
            StateVector psi0 = (opts.prep == Preparation::superposition)
                                   ? initial_cat_state(pb, m, m)
                                   : initial_eigenstate(pb, m, m);
            OperatorMatrix h = build_interaction_hamiltonian(*pb, scales.alpha);
            EvolutionResult evo = evolve_exact(h, psi0, t_grid);
            for (size_t k = 0; k < t_grid.size(); ++k) {
                s_exact[k] = von_neumann_entropy_bits(reduced_from_pure(evo.states[k], Sphere::A));
                loss[k] = evo.truncation_loss[k];
            }
            const double s_last = s_exact.back();
            if (s_prev >= 0.0 &&
                std::abs(s_last - s_prev) <= opts.converge_rel * std::max(s_last, 1e-30))
                break;
            s_prev = s_last;
            if (w >= opts.max_half_width) break;
            w = std::min(2 * w, opts.max_half_width);
        }
        widest = std::max(widest, w);

        for (size_t k = 0; k < t_grid.size(); ++k) {
            EntropyCurveRow r;
            r.t = t_grid[k];
            r.m_over_l = frac;
            const double g = scales.coupling_g(t_grid[k]);
            const double kap = std::min(scales.coupling_kappa(m_value, t_grid[k]), g);
            r.entropy_closed = entropy_closed_form(g, kap);
            r.entropy_exact = s_exact[k];
            r.truncation_loss = loss[k];
            rows.push_back(r);
        }
    }
    if (width_used) *width_used = widest;
    return rows;
}

} // namespace framedrag
