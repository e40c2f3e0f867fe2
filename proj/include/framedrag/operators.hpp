#pragma once

#include "framedrag/basis.hpp"
#include "framedrag/linalg.hpp"

namespace framedrag {

enum class LadderSign { plus, minus };
enum class Sphere { A, B };

// Matrix element of L+/L- in cancellation-safe product form:
//   L+|l,m> -> sqrt((l-m)(l+m+1)) |l,m+1>
//   L-|l,m> -> sqrt((l+m)(l-m+1)) |l,m-1>
// Exact zero at the ladder edges. Throws on |m| > l.
// Only valid when l and m are exactly representable; windowed code paths
// use the anchored Site pieces instead.
double ladder_element(double l, double m, LadderSign sign);

struct SingleSphereOps {
    OperatorMatrix l_plus, l_minus, l_z, l_x, l_y;
};

// Dense L+/L-/Lz/Lx/Ly on a single-sphere window. Rows whose ladder target
// falls outside the window are zero (hard truncation). Lz entries are the
// rounded doubles sector*l0+offset; variance code works in offsets instead.
SingleSphereOps build_single_sphere_operators(const SphereBasis& w);

// O = L_{A+}L_{B-} + L_{A-}L_{B+} - 4 L_{Az}L_{Bz}, shell-block-diagonal,
// with the LzLz diagonal expanded in anchor pieces so offset-level structure
// survives at l ~ 1e23.
Eigen::MatrixXcd build_coupling_operator(const ProductBasis& pb);

// H_I/hbar = -(alpha/2) O  [1/s]; propagation uses exp(-i H t) directly.
OperatorMatrix build_interaction_hamiltonian(const ProductBasis& pb, double alpha);

struct LadderPowerResult {
    StateVector state;          // unnormalized
    double truncation_loss = 0; // sum |dropped amplitude|^2
};

// (L_{s,sign})^q applied componentwise; q = 0 is the identity.
LadderPowerResult apply_ladder_power(const StateVector& psi, Sphere sphere,
                                     LadderSign sign, int q);

} // namespace framedrag
