// test_ops.cpp — operator primitives against independent oracles
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "corrproj/ops.hpp"
#include "corrproj/rng.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace corrproj;
using testsup::rand_density;
using testsup::rand_hermitian;
using testsup::rand_matrix;

TEST_CASE("kron of identities is the identity") {
    CHECK(ops::max_abs(ops::kron(ops::identity(2), ops::identity(3)) -
                       ops::identity(6)) == 0.0);
}

TEST_CASE("kron matches the index-formula definition") {
    rng::GaussianStream g(101);
    const Matrix a = rand_matrix(3, 2, g);
    const Matrix b = rand_matrix(2, 4, g);
    const Matrix k = ops::kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 8);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 2; ++j)
            for (Index r = 0; r < 2; ++r)
                for (Index c = 0; c < 4; ++c)
                    CHECK(std::abs(k(i * 2 + r, j * 4 + c) -
                                   a(i, j) * b(r, c)) == 0.0);
}

TEST_CASE("kron mixed-product and trace properties") {
    rng::GaussianStream g(102);
    const Matrix a = rand_matrix(3, 3, g), b = rand_matrix(2, 2, g);
    const Matrix c = rand_matrix(3, 3, g), d = rand_matrix(2, 2, g);
    CHECK(ops::max_abs(ops::kron(a, b) * ops::kron(c, d) -
                       ops::kron(a * c, b * d)) < 1e-12);
    CHECK(std::abs(ops::kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
}

TEST_CASE("partial traces match the contraction oracle") {
    rng::GaussianStream g(103);
    const DimPair dims{3, 4};
    const Matrix rho = rand_matrix(12, 12, g);
    CHECK(ops::max_abs(ops::partial_trace_env(rho, dims) -
                       oracle::ptrace_env_contraction(rho, dims)) < 1e-13);
    CHECK(ops::max_abs(ops::partial_trace_sys(rho, dims) -
                       oracle::ptrace_sys_contraction(rho, dims)) < 1e-13);
}

TEST_CASE("partial traces on product operators return weighted factors") {
    rng::GaussianStream g(104);
    const Matrix a = rand_matrix(3, 3, g), b = rand_matrix(4, 4, g);
    const DimPair dims{3, 4};
    const Matrix prod = ops::kron(a, b);
    CHECK(ops::max_abs(ops::partial_trace_env(prod, dims) - a * b.trace()) <
          1e-12);
    CHECK(ops::max_abs(ops::partial_trace_sys(prod, dims) - b * a.trace()) <
          1e-12);
    // full trace is preserved by both contractions
    CHECK(std::abs(ops::partial_trace_env(prod, dims).trace() - prod.trace()) <
          1e-12);
    CHECK(std::abs(ops::partial_trace_sys(prod, dims).trace() - prod.trace()) <
          1e-12);
}

TEST_CASE("partial trace rejects mismatched dimensions") {
    const Matrix rho = Matrix::Zero(6, 6);
    CHECK_THROWS_AS(ops::partial_trace_env(rho, DimPair{3, 4}), DimensionError);
    CHECK_THROWS_AS(ops::partial_trace_env(Matrix::Zero(3, 4), DimPair{2, 2}),
                    DimensionError);
}

TEST_CASE("min eigenvalue of a diagonal matrix") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = -0.5;
    d(2, 2) = 1.0;
    CHECK(ops::min_eigenvalue_hermitian(d) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("min eigenvalue matches characteristic-polynomial root isolation") {
    rng::GaussianStream g(105);
    for (Index d = 2; d <= 7; ++d) {
        const Matrix h = rand_hermitian(d, g);
        const std::vector<double> roots = oracle::eigs_charpoly(h);
        CHECK(std::abs(ops::min_eigenvalue_hermitian(h) - roots.front()) <
              1e-10);
    }
}

TEST_CASE("full spectrum vs characteristic-polynomial roots on a 6x6") {
    rng::GaussianStream g(106);
    const Matrix h = rand_hermitian(6, g);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    const std::vector<double> roots = oracle::eigs_charpoly(h);
    for (Index k = 0; k < 6; ++k)
        CHECK(std::abs(solver.eigenvalues()(k) -
                       roots[static_cast<std::size_t>(k)]) < 1e-10);
}

TEST_CASE("min eigenvalue rejects non-Hermitian input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0; // defect 1 against the zero transpose entry
    CHECK_THROWS_AS(ops::min_eigenvalue_hermitian(m), ContractError);
}

TEST_CASE("Gram matrices are positive semidefinite") {
    rng::GaussianStream g(107);
    const Matrix m = rand_matrix(5, 5, g);
    CHECK(ops::min_eigenvalue_hermitian(m * m.adjoint()) > -1e-12);
}

TEST_CASE("expm of zero and of a nilpotent block") {
    CHECK(ops::max_abs(ops::expm(Matrix::Zero(3, 3)) - ops::identity(3)) <
          1e-15);
    Matrix n = Matrix::Zero(2, 2);
    n(0, 1) = 1.0;
    Matrix expected = ops::identity(2);
    expected(0, 1) = 1.0;
    CHECK(ops::max_abs(ops::expm(n) - expected) < 1e-14);
}

TEST_CASE("expm matches series summation to 1e-12 relative") {
    rng::GaussianStream g(108);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix x = rand_matrix(6, 6, g); // spectral norm a few units
        const Matrix ref = oracle::expm_series(x);
        const double rel = ops::max_abs(ops::expm(x) - ref) /
                           std::max(1.0, ops::max_abs(ref));
        CHECK(rel < 1e-12);
    }
}

TEST_CASE("expm inverse and unitarity properties") {
    rng::GaussianStream g(109);
    const Matrix x = rand_matrix(4, 4, g);
    CHECK(ops::max_abs(ops::expm(x) * ops::expm(-x) - ops::identity(4)) <
          1e-11);
    const Matrix h = rand_hermitian(4, g);
    const Matrix u = ops::expm(Complex(0.0, -1.0) * h);
    CHECK(ops::max_abs(u * u.adjoint() - ops::identity(4)) < 1e-12);
}

TEST_CASE("vec/unvec roundtrip and the sandwich identity") {
    rng::GaussianStream g(110);
    const Matrix a = rand_matrix(3, 3, g), b = rand_matrix(3, 3, g);
    const Matrix x = rand_matrix(3, 3, g);
    CHECK(ops::max_abs(ops::unvec(ops::vec(x), 3, 3) - x) == 0.0);
    // vec(A X B^dag) = (conj(B) ⊗ A) vec(X)
    const Vector lhs = ops::vec(a * x * b.adjoint());
    const Vector rhs = ops::super_sandwich(a, b) * ops::vec(x);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    // left/right multiplication superoperators
    CHECK((ops::vec(a * x) - ops::super_left(a, 3) * ops::vec(x))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((ops::vec(x * b) - ops::super_right(b, 3) * ops::vec(x))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("two-level convention: index 0 is the excited state") {
    CHECK(ops::max_abs(ops::sigma_plus() * ops::sigma_minus() -
                       ops::excited_projector()) == 0.0);
    CHECK(ops::sigma_plus()(0, 1) == Complex(1.0, 0.0));
    CHECK(ops::sigma_minus()(1, 0) == Complex(1.0, 0.0));
    CHECK(ops::excited_projector()(0, 0) == Complex(1.0, 0.0));
    CHECK(ops::excited_projector()(1, 1) == Complex(0.0, 0.0));
}

TEST_CASE("spectral norm agrees with the eigenvalue route") {
    rng::GaussianStream g(111);
    const Matrix m = rand_matrix(5, 5, g);
    const double via_eig =
        std::sqrt(Eigen::SelfAdjointEigenSolver<Matrix>(m.adjoint() * m)
                      .eigenvalues()
                      .maxCoeff());
    CHECK(ops::spectral_norm(m) == doctest::Approx(via_eig).epsilon(1e-10));
}

TEST_CASE("hermitize and hermiticity defect") {
    rng::GaussianStream g(112);
    const Matrix m = rand_matrix(4, 4, g);
    CHECK(ops::hermiticity_defect(ops::hermitize(m)) < 1e-15);
    CHECK(ops::hermiticity_defect(rand_hermitian(4, g)) < 1e-15);
    const Matrix rho = rand_density(4, g);
    CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("deterministic coupling stream is platform-pinned") {
    // fixed seed -> fixed first draws (documents the exact RNG contract:
    // mt19937_64 raw words through the explicit Box-Muller map)
    rng::GaussianStream g(42);
    const double a = g.next();
    const double b = g.next();
    rng::GaussianStream g2(42);
    CHECK(a == g2.next());
    CHECK(b == g2.next());
    CHECK(a != b);
    // substream derivation is stable and collision-free for nearby indices
    const std::uint64_t s0 = rng::realization_seed(7, 0);
    const std::uint64_t s1 = rng::realization_seed(7, 1);
    CHECK(s0 != s1);
    CHECK(rng::realization_seed(7, 0) == s0);
}
