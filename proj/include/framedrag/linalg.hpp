#pragma once

#include <complex>

#include <Eigen/Dense>

#include "framedrag/basis.hpp"

namespace framedrag {

// Square complex operator over a truncated basis (single sphere or product).
struct OperatorMatrix {
    Eigen::MatrixXcd mat;
    bool hermitian = false;
};

// max-norm Hermiticity defect relative to the matrix max-norm
double hermiticity_defect(const Eigen::MatrixXcd& m);

struct StateVector {
    Eigen::VectorXcd v;
    ProductBasisPtr basis;
    double norm() const { return v.norm(); }
};

struct DensityMatrix {
    Eigen::MatrixXcd m;
    ProductBasisPtr basis;
};

DensityMatrix pure_density(const StateVector& psi);

// Checks trace ~ 1, hermiticity and eigenvalue floor; throws on violation.
void validate_density(const DensityMatrix& rho, double trace_tol = 1e-9,
                      double eig_floor = -1e-9);

} // namespace framedrag
