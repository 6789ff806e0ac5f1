// projection.hpp — correlated projection superoperators P rho = sum_i tr_E{A_i rho} ⊗ B_i
#pragma once

#include <vector>

#include "corrproj/ops.hpp"

namespace corrproj {

// correlated projection defined by environment operator families {A_i}, {B_i};
// the defining conditions (Hermiticity, biorthogonality tr{B_i A_j} = delta_ij,
// trace condition sum_i tr{B_i} A_i = I_E, complete positivity of
// sum_i A_i^T ⊗ B_i) are checked by validate(), not enforced on construction
struct CorrelatedProjection {
    DimPair dims;
    std::vector<Matrix> a_ops;
    std::vector<Matrix> b_ops;

    Index n() const { return static_cast<Index>(a_ops.size()); }
};

// quantitative defects of the defining conditions; `passed` applies the
// documented thresholds (condition defects <= 1e-10, CP min eigenvalue >= -1e-9)
struct ValidationReport {
    double hermiticity_defect = 0.0;    // max over all A_i, B_i
    double biorthogonality_defect = 0.0; // max |tr{B_i A_j} - delta_ij|
    double trace_defect = 0.0;          // || sum_i tr{B_i} A_i - I ||_max
    double cp_min_eigenvalue = 0.0;     // min eig of sum_i A_i^T ⊗ B_i
    double idempotence_defect = 0.0;    // max ||P(P X) - P X||_max over basis X
    bool passed = false;
};

namespace proj {

// structural check (consistent square dims, n >= 1); throws DimensionError
void require_well_formed(const CorrelatedProjection& p);

// measures all defining conditions; idempotence is probed on the complete
// operator basis of the bipartite space
ValidationReport validate(const CorrelatedProjection& p);

// P rho = sum_i tr_E{A_i rho} ⊗ B_i
Matrix apply(const CorrelatedProjection& p, const Matrix& rho);

// adjoint in the Hilbert-Schmidt inner product:
// P^dag O = sum_i tr_E{B_i O} ⊗ A_i
Matrix apply_adjoint(const CorrelatedProjection& p, const Matrix& obs);

// unnormalized component matrices rho_i = tr_E{A_i rho} on the system space
std::vector<Matrix> components(const CorrelatedProjection& p, const Matrix& rho);

// projection from a family of orthogonal environment projectors (bands):
// A_i = Pi_i, B_i = Pi_i rho0 Pi_i / tr{Pi_i rho0}; throws PreconditionError
// when the projectors are not an orthogonal idempotent family resolving the
// identity, or a band weight is degenerate (< 1e-12)
CorrelatedProjection band_projection(Index dim_sys,
                                     const std::vector<Matrix>& projectors,
                                     const Matrix& rho0);

// single-component product projection: A = I_E, B = rho0
CorrelatedProjection product_projection(Index dim_sys, const Matrix& rho0);

// basis change A'_i = sum_j u_ij A_j, B'_i = sum_j v_ij B_j with
// v = (u^T)^{-1}; real u preserves Hermiticity; throws PreconditionError
// for non-square or numerically singular u
CorrelatedProjection gauge_transform(const CorrelatedProjection& p,
                                     const RealMatrix& u);

// whether P^dag O = O within tol (max-norm)
bool is_relevant_observable(const CorrelatedProjection& p, const Matrix& obs,
                            double tol);

// observable assembled from system components: sum_i O_i ⊗ A_i (always a
// fixed point of P^dag for biorthogonal families)
Matrix relevant_observable(const CorrelatedProjection& p,
                           const std::vector<Matrix>& sys_ops);

// column-stacked map matrix of the environment-space superoperator
// Lambda X = sum_i tr{A_i X} B_i, size dim_env^2 x dim_env^2
Matrix lambda_map_matrix(const CorrelatedProjection& p);

// recovers an (A_i, B_i) family from the map matrix of a Hermiticity- and
// trace-preserving idempotent; rank is decided at relative singular-value
// threshold 1e-8; throws ContractError when the input is not such a map
CorrelatedProjection decompose_idempotent(const Matrix& lambda_matrix,
                                          Index dim_sys);

} // namespace proj
} // namespace corrproj
