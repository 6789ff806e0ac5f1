// ops.hpp — dense operator primitives: products, partial traces, spectra, expm
#pragma once

#include <complex>
#include <Eigen/Dense>

#include "corrproj/errors.hpp"
#include "corrproj/tolerances.hpp"

namespace corrproj {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector  = Eigen::VectorXcd;
using Index   = Eigen::Index;

// system-environment dimensions of a bipartite space; composite index
// convention is (s, e) -> s * dim_env + e (system factor first)
struct DimPair {
    Index dim_sys = 0;
    Index dim_env = 0;
    Index total() const { return dim_sys * dim_env; }
};

namespace ops {

// ---- elementary constructions ----

// d x d identity
Matrix identity(Index d);

// elementary matrix E_ab = |a><b| in dimension d
Matrix basis_op(Index d, Index a, Index b);

// two-level basis ordering everywhere in this library: index 0 = excited |1>,
// index 1 = ground |0>; so sigma_plus() has its 1 at (0,1) and the excited
// population of rho is rho(0,0)
Matrix sigma_plus();
Matrix sigma_minus();
Matrix sigma_z();
Matrix excited_projector(); // sigma_+ sigma_- = diag(1, 0)

// ---- basic algebra ----

// Kronecker product, (a ⊗ b)[(i*rb + k), (j*cb + l)] = a(i,j) b(k,l)
Matrix kron(const Matrix& a, const Matrix& b);

Matrix dagger(const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

// largest absolute entry (max-norm)
double max_abs(const Matrix& a);

// max-norm distance from Hermiticity, ||a - a^dagger||_max
double hermiticity_defect(const Matrix& a);

// (a + a^dagger) / 2
Matrix hermitize(const Matrix& a);

// ---- vectorization (column stacking, vec(ABC) = (C^T ⊗ A) vec(B)) ----

Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Index rows, Index cols);

// superoperator matrices acting on column-stacked states
Matrix super_left(const Matrix& a, Index d);  // X -> A X       : I_d ⊗ A
Matrix super_right(const Matrix& b, Index d); // X -> X B       : B^T ⊗ I_d
Matrix super_sandwich(const Matrix& a, const Matrix& b); // X -> A X B^dag

// ---- partial traces over the (s, e) -> s * dim_env + e layout ----

// tr_E: (dim_sys*dim_env) square -> dim_sys square
Matrix partial_trace_env(const Matrix& rho, DimPair dims);

// tr_S: (dim_sys*dim_env) square -> dim_env square
Matrix partial_trace_sys(const Matrix& rho, DimPair dims);

// ---- spectra and functions ----

// smallest eigenvalue of a Hermitian matrix; rejects inputs whose
// Hermiticity defect exceeds tol::hermiticity
double min_eigenvalue_hermitian(const Matrix& a);

// matrix exponential (scaling-and-squaring Pade), relative accuracy ~1e-12
Matrix expm(const Matrix& a);

// spectral norm (largest singular value)
double spectral_norm(const Matrix& a);

// ---- shared argument checks ----

// throws DimensionError unless a is square with the given dimension
void require_square(const Matrix& a, Index dim, const char* what);

// throws DimensionError unless dims are positive and rho matches dims.total()
void require_bipartite(const Matrix& rho, DimPair dims, const char* what);

} // namespace ops
} // namespace corrproj
