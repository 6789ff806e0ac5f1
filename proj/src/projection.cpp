// projection.cpp — correlated projection construction, validation, application
#include "corrproj/projection.hpp"

#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace corrproj::proj {

namespace {

// min eigenvalue of the hermitized part, without the Hermiticity gate
// (validation must report on defective inputs rather than throw)
double min_eig_lenient(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(ops::hermitize(a),
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// component tr_E{(I ⊗ A) rho} of the projection sum
Matrix traced_component(const Matrix& a, const Matrix& rho, DimPair dims) {
    const Index ds = dims.dim_sys, de = dims.dim_env;
    // <s| tr_E{(I ⊗ A) rho} |s'> = sum_{e,f} A(e,f) rho[(s,f),(s',e)]
    Matrix out = Matrix::Zero(ds, ds);
    for (Index s = 0; s < ds; ++s)
        for (Index t = 0; t < ds; ++t) {
            Complex acc = 0.0;
            for (Index e = 0; e < de; ++e)
                for (Index f = 0; f < de; ++f)
                    acc += a(e, f) * rho(s * de + f, t * de + e);
            out(s, t) = acc;
        }
    return out;
}

// orthonormal Hermitian basis of d x d operators, returned as the unitary
// whose columns are the column-stacked basis elements
Matrix hermitian_basis_matrix(Index d) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix basis(d * d, d * d);
    Index col = 0;
    for (Index a = 0; a < d; ++a)
        basis.col(col++) = ops::vec(ops::basis_op(d, a, a));
    for (Index a = 0; a < d; ++a)
        for (Index b = a + 1; b < d; ++b) {
            basis.col(col++) = ops::vec(inv_sqrt2 * (ops::basis_op(d, a, b) +
                                                     ops::basis_op(d, b, a)));
            basis.col(col++) =
                ops::vec(Complex(0.0, inv_sqrt2) *
                         (ops::basis_op(d, a, b) - ops::basis_op(d, b, a)));
        }
    return basis;
}

} // namespace

void require_well_formed(const CorrelatedProjection& p) {
    if (p.dims.dim_sys <= 0 || p.dims.dim_env <= 0)
        throw DimensionError("projection: dimensions must be positive");
    if (p.a_ops.empty())
        throw DimensionError("projection: at least one component required");
    if (p.a_ops.size() != p.b_ops.size())
        throw DimensionError("projection: a_ops/b_ops length mismatch");
    for (const Matrix& a : p.a_ops)
        ops::require_square(a, p.dims.dim_env, "projection a_op");
    for (const Matrix& b : p.b_ops)
        ops::require_square(b, p.dims.dim_env, "projection b_op");
}

ValidationReport validate(const CorrelatedProjection& p) {
    require_well_formed(p);
    const Index n = p.n();
    const Index de = p.dims.dim_env;
    ValidationReport rep;

    for (Index i = 0; i < n; ++i) {
        rep.hermiticity_defect = std::max(
            rep.hermiticity_defect, ops::hermiticity_defect(p.a_ops[i]));
        rep.hermiticity_defect = std::max(
            rep.hermiticity_defect, ops::hermiticity_defect(p.b_ops[i]));
    }

    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const Complex w = (p.b_ops[i] * p.a_ops[j]).trace();
            const double target = (i == j) ? 1.0 : 0.0;
            rep.biorthogonality_defect =
                std::max(rep.biorthogonality_defect, std::abs(w - target));
        }

    Matrix weighted = Matrix::Zero(de, de);
    for (Index i = 0; i < n; ++i)
        weighted += p.b_ops[i].trace() * p.a_ops[i];
    rep.trace_defect = ops::max_abs(weighted - ops::identity(de));

    Matrix cp = Matrix::Zero(de * de, de * de);
    for (Index i = 0; i < n; ++i)
        cp += ops::kron(p.a_ops[i].transpose(), p.b_ops[i]);
    rep.cp_min_eigenvalue = min_eig_lenient(cp);

    // idempotence probed on the complete operator basis of the full space
    const Index dt = p.dims.total();
    for (Index a = 0; a < dt; ++a)
        for (Index b = 0; b < dt; ++b) {
            const Matrix once = proj::apply(p, ops::basis_op(dt, a, b));
            rep.idempotence_defect =
                std::max(rep.idempotence_defect,
                         ops::max_abs(proj::apply(p, once) - once));
        }

    rep.passed = rep.hermiticity_defect <= tol::hermiticity &&
                 rep.biorthogonality_defect <= tol::condition &&
                 rep.trace_defect <= tol::condition &&
                 rep.idempotence_defect <= tol::condition &&
                 rep.cp_min_eigenvalue >= tol::psd_floor;
    return rep;
}

Matrix apply(const CorrelatedProjection& p, const Matrix& rho) {
    require_well_formed(p);
    ops::require_bipartite(rho, p.dims, "projection apply");
    Matrix out = Matrix::Zero(p.dims.total(), p.dims.total());
    for (Index i = 0; i < p.n(); ++i)
        out += ops::kron(traced_component(p.a_ops[i], rho, p.dims), p.b_ops[i]);
    return out;
}

Matrix apply_adjoint(const CorrelatedProjection& p, const Matrix& obs) {
    require_well_formed(p);
    ops::require_bipartite(obs, p.dims, "projection apply_adjoint");
    Matrix out = Matrix::Zero(p.dims.total(), p.dims.total());
    for (Index i = 0; i < p.n(); ++i)
        out += ops::kron(traced_component(p.b_ops[i], obs, p.dims), p.a_ops[i]);
    return out;
}

std::vector<Matrix> components(const CorrelatedProjection& p, const Matrix& rho) {
    require_well_formed(p);
    ops::require_bipartite(rho, p.dims, "projection components");
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(p.n()));
    for (Index i = 0; i < p.n(); ++i)
        out.push_back(traced_component(p.a_ops[i], rho, p.dims));
    return out;
}

CorrelatedProjection band_projection(Index dim_sys,
                                     const std::vector<Matrix>& projectors,
                                     const Matrix& rho0) {
    if (dim_sys <= 0)
        throw DimensionError("band_projection: dim_sys must be positive");
    if (projectors.empty())
        throw DimensionError("band_projection: at least one projector required");
    const Index de = projectors.front().rows();
    for (const Matrix& pi : projectors)
        ops::require_square(pi, de, "band_projection projector");
    ops::require_square(rho0, de, "band_projection rho0");

    for (std::size_t i = 0; i < projectors.size(); ++i) {
        if (ops::hermiticity_defect(projectors[i]) > tol::hermiticity)
            throw PreconditionError("band_projection: projector " +
                                    std::to_string(i + 1) + " not Hermitian");
        if (ops::max_abs(projectors[i] * projectors[i] - projectors[i]) >
            tol::condition)
            throw PreconditionError("band_projection: projector " +
                                    std::to_string(i + 1) + " not idempotent");
        for (std::size_t j = i + 1; j < projectors.size(); ++j)
            if (ops::max_abs(projectors[i] * projectors[j]) > tol::condition)
                throw PreconditionError(
                    "band_projection: projectors " + std::to_string(i + 1) +
                    " and " + std::to_string(j + 1) + " not orthogonal");
    }
    Matrix total = Matrix::Zero(de, de);
    for (const Matrix& pi : projectors) total += pi;
    if (ops::max_abs(total - ops::identity(de)) > tol::condition)
        throw PreconditionError(
            "band_projection: projectors do not resolve the identity");

    if (ops::hermiticity_defect(rho0) > tol::hermiticity)
        throw PreconditionError("band_projection: rho0 not Hermitian");
    if (ops::min_eigenvalue_hermitian(rho0) < tol::psd_floor)
        throw PreconditionError("band_projection: rho0 not positive");

    CorrelatedProjection p;
    p.dims = DimPair{dim_sys, de};
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const Matrix band = projectors[i] * rho0 * projectors[i];
        const double weight = band.trace().real();
        if (weight < tol::band_weight)
            throw PreconditionError("band_projection: band " +
                                    std::to_string(i + 1) +
                                    " has degenerate weight");
        p.a_ops.push_back(projectors[i]);
        p.b_ops.push_back(band / weight);
    }
    return p;
}

CorrelatedProjection product_projection(Index dim_sys, const Matrix& rho0) {
    return band_projection(dim_sys, {ops::identity(rho0.rows())}, rho0);
}

CorrelatedProjection gauge_transform(const CorrelatedProjection& p,
                                     const RealMatrix& u) {
    require_well_formed(p);
    const Index n = p.n();
    if (u.rows() != n || u.cols() != n)
        throw PreconditionError("gauge_transform: u must be " +
                                std::to_string(n) + "x" + std::to_string(n));
    if (!u.allFinite())
        throw PreconditionError("gauge_transform: u has non-finite entries");
    Eigen::FullPivLU<RealMatrix> lu(u);
    if (!lu.isInvertible())
        throw PreconditionError("gauge_transform: u is numerically singular");
    const RealMatrix v = lu.inverse().transpose(); // v = (u^T)^{-1}

    CorrelatedProjection out;
    out.dims = p.dims;
    const Index de = p.dims.dim_env;
    for (Index i = 0; i < n; ++i) {
        Matrix a = Matrix::Zero(de, de);
        Matrix b = Matrix::Zero(de, de);
        for (Index j = 0; j < n; ++j) {
            a += u(i, j) * p.a_ops[j];
            b += v(i, j) * p.b_ops[j];
        }
        out.a_ops.push_back(std::move(a));
        out.b_ops.push_back(std::move(b));
    }
    return out;
}

bool is_relevant_observable(const CorrelatedProjection& p, const Matrix& obs,
                            double tol) {
    return ops::max_abs(apply_adjoint(p, obs) - obs) <= tol;
}

Matrix relevant_observable(const CorrelatedProjection& p,
                           const std::vector<Matrix>& sys_ops) {
    require_well_formed(p);
    if (static_cast<Index>(sys_ops.size()) != p.n())
        throw DimensionError(
            "relevant_observable: one system operator per component required");
    Matrix out = Matrix::Zero(p.dims.total(), p.dims.total());
    for (Index i = 0; i < p.n(); ++i) {
        ops::require_square(sys_ops[i], p.dims.dim_sys,
                            "relevant_observable system operator");
        out += ops::kron(sys_ops[i], p.a_ops[i]);
    }
    return out;
}

Matrix lambda_map_matrix(const CorrelatedProjection& p) {
    require_well_formed(p);
    const Index d = p.dims.dim_env;
    Matrix map = Matrix::Zero(d * d, d * d);
    for (Index col = 0; col < d * d; ++col) {
        const Matrix x = ops::basis_op(d, col % d, col / d);
        Matrix lx = Matrix::Zero(d, d);
        for (Index i = 0; i < p.n(); ++i)
            lx += (p.a_ops[i] * x).trace() * p.b_ops[i];
        map.col(col) = ops::vec(lx);
    }
    return map;
}

CorrelatedProjection decompose_idempotent(const Matrix& lambda_matrix,
                                          Index dim_sys) {
    if (dim_sys <= 0)
        throw DimensionError("decompose_idempotent: dim_sys must be positive");
    const Index dd = lambda_matrix.rows();
    if (lambda_matrix.cols() != dd)
        throw DimensionError("decompose_idempotent: map matrix must be square");
    const Index d = static_cast<Index>(std::llround(std::sqrt(double(dd))));
    if (d * d != dd)
        throw DimensionError(
            "decompose_idempotent: map dimension is not a perfect square");

    if (ops::max_abs(lambda_matrix * lambda_matrix - lambda_matrix) >
        tol::map_input)
        throw ContractError("decompose_idempotent: map is not a projection");

    const Matrix basis = hermitian_basis_matrix(d);
    const Matrix in_basis = basis.adjoint() * lambda_matrix * basis;
    if (in_basis.imag().cwiseAbs().maxCoeff() > tol::map_input)
        throw ContractError(
            "decompose_idempotent: map does not preserve Hermiticity");
    const RealMatrix lam_r = in_basis.real();

    // trace preservation: tr Lambda(X) = tr X for every basis element, i.e.
    // the trace functional's coordinate row is a left fixed point
    const Eigen::VectorXd id_coords =
        (basis.adjoint() * ops::vec(ops::identity(d))).real();
    const double trace_defect =
        (id_coords.transpose() * lam_r - id_coords.transpose())
            .cwiseAbs()
            .maxCoeff();
    if (trace_defect > tol::map_input)
        throw ContractError(
            "decompose_idempotent: map does not preserve the trace");

    Eigen::BDCSVD<RealMatrix> svd(lam_r,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0)
        throw ContractError("decompose_idempotent: map is numerically zero");
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > tol::rank_rel * sigma(0))
        ++rank;

    // range of the map -> B_i; range of the adjoint -> ingredients for A_i
    std::vector<Matrix> g_ops, q_ops;
    for (Index k = 0; k < rank; ++k) {
        g_ops.push_back(
            ops::unvec(basis * svd.matrixU().col(k).cast<Complex>(), d, d));
        q_ops.push_back(
            ops::unvec(basis * svd.matrixV().col(k).cast<Complex>(), d, d));
    }

    // gram matrix W_kl = tr{Q_k G_l}; equals Sigma^{-1} for exact idempotents
    RealMatrix w =
        svd.matrixV().leftCols(rank).transpose() * svd.matrixU().leftCols(rank);
    Eigen::FullPivLU<RealMatrix> lu(w);
    if (!lu.isInvertible())
        throw ContractError(
            "decompose_idempotent: range/corange pairing is singular");
    const RealMatrix w_inv = lu.inverse();

    CorrelatedProjection p;
    p.dims = DimPair{dim_sys, d};
    for (Index i = 0; i < rank; ++i) {
        Matrix a = Matrix::Zero(d, d);
        for (Index k = 0; k < rank; ++k) a += w_inv(i, k) * q_ops[k];
        p.a_ops.push_back(std::move(a));
        p.b_ops.push_back(g_ops[i]);
    }
    return p;
}

} // namespace corrproj::proj
