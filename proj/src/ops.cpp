// ops.cpp — dense operator primitives
#include "corrproj/ops.hpp"

#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace corrproj::ops {

// ---- elementary constructions ----

Matrix identity(Index d) {
    if (d <= 0) throw DimensionError("identity: dimension must be positive");
    return Matrix::Identity(d, d);
}

Matrix basis_op(Index d, Index a, Index b) {
    if (d <= 0) throw DimensionError("basis_op: dimension must be positive");
    if (a < 0 || a >= d || b < 0 || b >= d)
        throw DimensionError("basis_op: index out of range");
    Matrix e = Matrix::Zero(d, d);
    e(a, b) = 1.0;
    return e;
}

Matrix sigma_plus() { return basis_op(2, 0, 1); }
Matrix sigma_minus() { return basis_op(2, 1, 0); }

Matrix sigma_z() {
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

Matrix excited_projector() { return basis_op(2, 0, 0); }

// ---- basic algebra ----

Matrix kron(const Matrix& a, const Matrix& b) {
    const Index ra = a.rows(), ca = a.cols();
    const Index rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Index i = 0; i < ra; ++i)
        for (Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

Matrix dagger(const Matrix& a) { return a.adjoint(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

double max_abs(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("hermiticity_defect: matrix must be square");
    return max_abs(a - a.adjoint());
}

Matrix hermitize(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("hermitize: matrix must be square");
    return 0.5 * (a + a.adjoint());
}

// ---- vectorization ----

Vector vec(const Matrix& a) {
    return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
    if (v.size() != rows * cols)
        throw DimensionError("unvec: size mismatch");
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix super_left(const Matrix& a, Index d) {
    return kron(identity(d), a);
}

Matrix super_right(const Matrix& b, Index d) {
    return kron(b.transpose(), identity(d));
}

Matrix super_sandwich(const Matrix& a, const Matrix& b) {
    return kron(b.conjugate(), a);
}

// ---- partial traces ----

Matrix partial_trace_env(const Matrix& rho, DimPair dims) {
    require_bipartite(rho, dims, "partial_trace_env");
    const Index ds = dims.dim_sys, de = dims.dim_env;
    Matrix out = Matrix::Zero(ds, ds);
    for (Index s = 0; s < ds; ++s)
        for (Index t = 0; t < ds; ++t)
            for (Index e = 0; e < de; ++e)
                out(s, t) += rho(s * de + e, t * de + e);
    return out;
}

Matrix partial_trace_sys(const Matrix& rho, DimPair dims) {
    require_bipartite(rho, dims, "partial_trace_sys");
    const Index ds = dims.dim_sys, de = dims.dim_env;
    Matrix out = Matrix::Zero(de, de);
    for (Index e = 0; e < de; ++e)
        for (Index f = 0; f < de; ++f)
            for (Index s = 0; s < ds; ++s)
                out(e, f) += rho(s * de + e, s * de + f);
    return out;
}

// ---- spectra and functions ----

double min_eigenvalue_hermitian(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("min_eigenvalue_hermitian: matrix must be square");
    const double defect = hermiticity_defect(a);
    if (defect > tol::hermiticity)
        throw ContractError(
            "min_eigenvalue_hermitian: Hermiticity defect " +
            std::to_string(defect) + " exceeds tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a),
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ContractError("min_eigenvalue_hermitian: eigensolver failed");
    return solver.eigenvalues().minCoeff();
}

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("expm: matrix must be square");
    return a.exp();
}

double spectral_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

// ---- shared argument checks ----

void require_square(const Matrix& a, Index dim, const char* what) {
    if (a.rows() != dim || a.cols() != dim)
        throw DimensionError(std::string(what) + ": expected " +
                             std::to_string(dim) + "x" + std::to_string(dim) +
                             " matrix, got " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
}

void require_bipartite(const Matrix& rho, DimPair dims, const char* what) {
    if (dims.dim_sys <= 0 || dims.dim_env <= 0)
        throw DimensionError(std::string(what) +
                             ": dimensions must be positive");
    require_square(rho, dims.total(), what);
}

} // namespace corrproj::ops
