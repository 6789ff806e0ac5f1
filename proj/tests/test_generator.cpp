// test_generator.cpp — coupled component generator, embedding, conservation
#include <doctest.h>

#include <cmath>

#include "corrproj/evolution.hpp"
#include "corrproj/generator.hpp"
#include "corrproj/ops.hpp"
#include "corrproj/rng.hpp"
#include "test_support.hpp"

using namespace corrproj;
using testsup::rand_block_density;
using testsup::rand_density;
using testsup::rand_generator;
using testsup::rand_hermitian;

namespace {

// coupled rate-equation generator with excitation transfer between two
// components: gain into 0 via sigma_+ at rate g1, gain into 1 via sigma_-
// at rate g2, both components evolving under h
GeneralizedLindblad two_component_rates(const Matrix& h, double g1, double g2) {
    GeneralizedLindblad g;
    g.n = 2;
    g.dim_sys = 2;
    g.h_ops = {h, h};
    g.jump_ops[{0, 1, 0}] = std::sqrt(g1) * ops::sigma_plus();
    g.jump_ops[{1, 0, 1}] = std::sqrt(g2) * ops::sigma_minus();
    return g;
}

} // namespace

TEST_CASE("single component reduces to the standard Lindblad equation") {
    rng::GaussianStream g(301);
    const Matrix h = rand_hermitian(3, g);
    const Matrix l = testsup::rand_matrix(3, 3, g);
    GeneralizedLindblad gen1;
    gen1.n = 1;
    gen1.dim_sys = 3;
    gen1.h_ops = {h};
    gen1.jump_ops[{0, 0, 0}] = l;

    ComponentState s;
    s.dim_sys = 3;
    s.components = {rand_density(3, g)};
    const ComponentState out = gen::rhs(gen1, s);

    const Complex mi(0.0, -1.0);
    const Matrix expected =
        mi * ops::commutator(h, s.components[0]) +
        l * s.components[0] * l.adjoint() -
        0.5 * ops::anticommutator(l.adjoint() * l, s.components[0]);
    CHECK(ops::max_abs(out.components[0] - expected) < 1e-13);
}

TEST_CASE("two-component rate equation matches its handwritten form") {
    rng::GaussianStream g(302);
    const Matrix h = rand_hermitian(2, g);
    const double g1 = 0.7, g2 = 0.3;
    const auto gen2 = two_component_rates(h, g1, g2);

    ComponentState s = rand_block_density(2, 2, g);
    const ComponentState out = gen::rhs(gen2, s);

    const Matrix sp = ops::sigma_plus(), sm = ops::sigma_minus();
    const Complex mi(0.0, -1.0);
    // gain into each component comes from the other; the loss rate of a
    // component is set by the operator that drains it
    const Matrix d0 = mi * ops::commutator(h, s.components[0]) +
                      g1 * sp * s.components[1] * sm -
                      0.5 * g2 * ops::anticommutator(sp * sm, s.components[0]);
    const Matrix d1 = mi * ops::commutator(h, s.components[1]) +
                      g2 * sm * s.components[0] * sp -
                      0.5 * g1 * ops::anticommutator(sm * sp, s.components[1]);
    CHECK(ops::max_abs(out.components[0] - d0) < 1e-14);
    CHECK(ops::max_abs(out.components[1] - d1) < 1e-14);
}

TEST_CASE("apply_k agrees with the assembled right-hand side") {
    rng::GaussianStream g(303);
    const auto gen3 = rand_generator(3, 2, g);
    const ComponentState s = rand_block_density(3, 2, g);
    const ComponentState out = gen::rhs(gen3, s);
    for (int i = 0; i < 3; ++i)
        CHECK(ops::max_abs(gen::apply_k(gen3, i, s) -
                           out.components[static_cast<std::size_t>(i)]) <
              1e-13);
}

TEST_CASE("the flow preserves total trace and Hermiticity") {
    rng::GaussianStream g(304);
    const auto gen4 = rand_generator(3, 3, g);
    const ComponentState s = rand_block_density(3, 3, g);
    const ComponentState out = gen::rhs(gen4, s);
    Complex trace_sum = 0.0;
    for (const Matrix& c : out.components) {
        CHECK(ops::hermiticity_defect(c) < 1e-13);
        trace_sum += c.trace();
    }
    CHECK(std::abs(trace_sum) < 1e-13);
}

TEST_CASE("embedding reproduces the component flow on diagonal blocks") {
    rng::GaussianStream g(305);
    const auto gen5 = rand_generator(3, 2, g);
    const ComponentState s = rand_block_density(3, 2, g);
    const auto ext = gen::embed(gen5);

    const Matrix image = gen::extended_apply(ext, gen::assemble_extended(s));
    const ComponentState diag = gen::extract_components(image, 3, 2);
    const ComponentState direct = gen::rhs(gen5, s);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(ops::max_abs(diag.components[i] - direct.components[i]) < 1e-13);
    CHECK(gen::block_defect(ext, s) < 1e-13);
}

TEST_CASE("assemble and extract are mutually inverse on block states") {
    rng::GaussianStream g(306);
    const ComponentState s = rand_block_density(4, 3, g);
    const ComponentState back =
        gen::extract_components(gen::assemble_extended(s), 4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(ops::max_abs(back.components[i] - s.components[i]) == 0.0);
}

TEST_CASE("from_extended inverts embed exactly") {
    rng::GaussianStream g(307);
    const auto gen7 = rand_generator(3, 2, g);
    const auto back = gen::from_extended(gen::embed(gen7));
    REQUIRE(back.n == gen7.n);
    REQUIRE(back.dim_sys == gen7.dim_sys);
    for (int i = 0; i < 3; ++i)
        CHECK(ops::max_abs(back.h_ops[static_cast<std::size_t>(i)] -
                           gen7.h_ops[static_cast<std::size_t>(i)]) == 0.0);
    REQUIRE(back.jump_ops.size() == gen7.jump_ops.size());
    auto it = gen7.jump_ops.begin();
    for (const auto& [key, op] : back.jump_ops) {
        CHECK(key == it->first);
        CHECK(ops::max_abs(op - it->second) == 0.0);
        ++it;
    }
}

TEST_CASE("from_extended rejects operators spanning several blocks") {
    rng::GaussianStream g(308);
    const auto gen8 = rand_generator(2, 2, g);
    auto ext = gen::embed(gen8);
    // corrupt one jump operator so it straddles two component blocks
    ext.lindblad_ops[0] += 0.5 * Matrix::Identity(ext.dim(), ext.dim());
    CHECK_THROWS_AS(gen::from_extended(ext), ContractError);
}

TEST_CASE("extended action matches its column-stacked matrix") {
    rng::GaussianStream g(309);
    const auto gen9 = rand_generator(2, 3, g);
    const auto ext = gen::embed(gen9);
    const Matrix lmat = evo::liouvillian_matrix(ext);
    const Matrix x = testsup::rand_matrix(ext.dim(), ext.dim(), g);
    const Vector via_matrix = lmat * ops::vec(x);
    const Vector direct = ops::vec(gen::extended_apply(ext, x));
    CHECK((via_matrix - direct).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("excitation number is conserved by the two-component rate equation") {
    const Matrix h = ops::excited_projector(); // diagonal system Hamiltonian
    const auto gen10 = two_component_rates(h, 0.9, 0.4);
    RelevantConservedSet cs;
    cs.c_ops = {ops::excited_projector(),
                ops::excited_projector() + ops::identity(2)};
    CHECK(gen::conservation_defect(gen10, cs) < 1e-14);
}

TEST_CASE("the identity set is conserved by every generator") {
    rng::GaussianStream g(310);
    const auto gen11 = rand_generator(3, 3, g);
    RelevantConservedSet cs;
    cs.c_ops = {ops::identity(3), ops::identity(3), ops::identity(3)};
    CHECK(gen::conservation_defect(gen11, cs) < 1e-13);
}

TEST_CASE("generic observables are not conserved") {
    rng::GaussianStream g(311);
    const auto gen12 = rand_generator(2, 2, g);
    RelevantConservedSet cs;
    cs.c_ops = {rand_hermitian(2, g), rand_hermitian(2, g)};
    CHECK(gen::conservation_defect(gen12, cs) > 1e-3);
}

TEST_CASE("conserved_value sums component expectations") {
    ComponentState s;
    s.dim_sys = 2;
    Matrix r0 = Matrix::Zero(2, 2), r1 = Matrix::Zero(2, 2);
    r0(0, 0) = 0.25;          // excited population of component 0
    r1(0, 0) = 0.25;
    r1(1, 1) = 0.5;
    s.components = {r0, r1};
    RelevantConservedSet cs;
    cs.c_ops = {ops::excited_projector(),
                ops::excited_projector() + ops::identity(2)};
    // 0.25 + (0.25 + 0.75) = 1.25
    CHECK(gen::conserved_value(cs, s) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("uncoupled components evolve independently") {
    rng::GaussianStream g(312);
    std::vector<gen::LocalLindblad> locals;
    for (int i = 0; i < 2; ++i)
        locals.push_back({rand_hermitian(2, g),
                          {testsup::rand_matrix(2, 2, g)}});
    const auto gen13 = gen::uncoupled(2, locals);
    REQUIRE(gen13.n == 2);
    REQUIRE(gen13.jump_ops.count({0, 0, 0}) == 1);
    REQUIRE(gen13.jump_ops.count({1, 1, 0}) == 1);

    ComponentState s = rand_block_density(2, 2, g);
    // zero out component 1 -> component 0's derivative is unchanged
    ComponentState s0 = s;
    s0.components[1].setZero();
    CHECK(ops::max_abs(gen::rhs(gen13, s).components[0] -
                       gen::rhs(gen13, s0).components[0]) == 0.0);
}

TEST_CASE("rate-table constructor builds the transfer structure") {
    const std::vector<double> grid = {0.0, 1.0};
    RealMatrix g1 = RealMatrix::Zero(2, 2), g2 = RealMatrix::Zero(2, 2);
    g1(0, 1) = 0.49; // gain into component 0 from component 1 via sigma_+
    g2(1, 0) = 0.25; // gain into component 1 from component 0 via sigma_-
    const Matrix h = ops::excited_projector();
    const auto built = gen::energy_resolved(grid, g1, g2, {h, h});

    const auto reference = two_component_rates(h, 0.49, 0.25);
    REQUIRE(built.jump_ops.size() == reference.jump_ops.size());
    auto it = reference.jump_ops.begin();
    for (const auto& [key, op] : built.jump_ops) {
        CHECK(key == it->first);
        CHECK(ops::max_abs(op - it->second) < 1e-15);
        ++it;
    }
    // identical right-hand sides on a sample state
    rng::GaussianStream g(313);
    const ComponentState s = rand_block_density(2, 2, g);
    const auto a = gen::rhs(built, s), b = gen::rhs(reference, s);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(ops::max_abs(a.components[i] - b.components[i]) < 1e-15);
}

TEST_CASE("rate-table constructor rejects negative rates, skips zero rates") {
    const std::vector<double> grid = {0.0, 1.0};
    RealMatrix zero = RealMatrix::Zero(2, 2);
    RealMatrix bad = zero;
    bad(0, 1) = -1e-3;
    const Matrix h = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(gen::energy_resolved(grid, bad, zero, {h, h}),
                    PreconditionError);
    const auto empty = gen::energy_resolved(grid, zero, zero, {h, h});
    CHECK(empty.jump_ops.empty());
}

TEST_CASE("generator_norm is the documented spectral sum") {
    GeneralizedLindblad g;
    g.n = 2;
    g.dim_sys = 2;
    g.h_ops = {2.0 * ops::sigma_z(), Matrix::Zero(2, 2)};
    g.jump_ops[{0, 1, 0}] = 3.0 * ops::sigma_plus();
    // ||2 sigma_z|| + ||3 sigma_+||^2 = 2 + 9
    CHECK(gen::generator_norm(g) == doctest::Approx(11.0).epsilon(1e-12));
}

TEST_CASE("malformed generators and mismatched states are rejected") {
    rng::GaussianStream g(314);
    auto bad = rand_generator(2, 2, g);
    bad.jump_ops[{2, 0, 0}] = ops::sigma_plus(); // component index out of range
    const ComponentState s = rand_block_density(2, 2, g);
    CHECK_THROWS_AS(gen::rhs(bad, s), DimensionError);

    const auto good = rand_generator(2, 2, g);
    CHECK_THROWS_AS(gen::apply_k(good, 5, s), DimensionError);
    const ComponentState wrong = rand_block_density(3, 2, g);
    CHECK_THROWS_AS(gen::rhs(good, wrong), DimensionError);

    GeneralizedLindblad short_h = good;
    short_h.h_ops.pop_back();
    CHECK_THROWS_AS(gen::rhs(short_h, s), DimensionError);
}
