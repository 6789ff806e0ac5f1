// evolution.cpp — trajectory integration and dense superoperator propagation
#include "corrproj/evolution.hpp"

#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace corrproj::evo {

namespace {

bool all_finite(const ComponentState& s) {
    for (const Matrix& c : s.components)
        if (!c.allFinite()) return false;
    return true;
}

StateDiagnostics diagnose(const ComponentState& s, double tol) {
    StateDiagnostics d;
    d.total_trace = total_trace(s);
    d.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const Matrix& c : s.components) {
        d.hermiticity_defect =
            std::max(d.hermiticity_defect, ops::hermiticity_defect(c));
        Eigen::SelfAdjointEigenSolver<Matrix> solver(ops::hermitize(c),
                                                     Eigen::EigenvaluesOnly);
        d.min_eigenvalue =
            std::min(d.min_eigenvalue, solver.eigenvalues().minCoeff());
    }
    d.flagged = d.min_eigenvalue < -tol || d.hermiticity_defect > tol ||
                std::abs(d.total_trace - 1.0) > tol;
    return d;
}

std::vector<double> conserved_values(
    const std::vector<RelevantConservedSet>& sets, const ComponentState& s) {
    std::vector<double> vals;
    vals.reserve(sets.size());
    for (const RelevantConservedSet& cs : sets)
        vals.push_back(gen::conserved_value(cs, s));
    return vals;
}

} // namespace

Matrix reduced_density(const ComponentState& s) {
    require_well_formed(s, "reduced_density");
    Matrix out = Matrix::Zero(s.dim_sys, s.dim_sys);
    for (const Matrix& c : s.components) out += c;
    return out;
}

StateDiagnostics check_state(const ComponentState& s, double tol) {
    require_well_formed(s, "check_state");
    return diagnose(s, tol);
}

Trajectory evolve_rk(const GeneralizedLindblad& g, const ComponentState& init,
                     double t_max, int steps,
                     const std::vector<RelevantConservedSet>& conserved) {
    gen::require_well_formed(g);
    require_well_formed(init, "evolve_rk initial state");
    if (init.n() != g.n || init.dim_sys != g.dim_sys)
        throw DimensionError("evolve_rk: state does not match generator");
    if (steps < 0)
        throw PreconditionError("evolve_rk: steps must be nonnegative");
    if (steps > 0 && !(t_max > 0.0))
        throw PreconditionError("evolve_rk: t_max must be positive");
    for (const RelevantConservedSet& cs : conserved)
        if (static_cast<int>(cs.c_ops.size()) != g.n)
            throw DimensionError(
                "evolve_rk: conserved set does not match generator");

    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);

    ComponentState state = init;
    traj.times.push_back(0.0);
    traj.states.push_back(state);
    traj.diagnostics.push_back(diagnose(state, tol::state_flag));
    traj.conserved.push_back(conserved_values(conserved, state));

    const double dt = (steps > 0) ? t_max / steps : 0.0;
    for (int step = 1; step <= steps; ++step) {
        const ComponentState k1 = gen::rhs(g, state);
        ComponentState mid = state;
        axpy(0.5 * dt, k1, mid);
        const ComponentState k2 = gen::rhs(g, mid);
        mid = state;
        axpy(0.5 * dt, k2, mid);
        const ComponentState k3 = gen::rhs(g, mid);
        ComponentState end = state;
        axpy(dt, k3, end);
        const ComponentState k4 = gen::rhs(g, end);

        axpy(dt / 6.0, k1, state);
        axpy(dt / 3.0, k2, state);
        axpy(dt / 3.0, k3, state);
        axpy(dt / 6.0, k4, state);

        if (!all_finite(state))
            throw DivergenceError("evolve_rk: divergence at step " +
                                  std::to_string(step) + " (t = " +
                                  std::to_string(step * dt) + ")");

        traj.times.push_back(step * dt);
        traj.states.push_back(state);
        traj.diagnostics.push_back(diagnose(state, tol::state_flag));
        traj.conserved.push_back(conserved_values(conserved, state));
    }
    return traj;
}

Matrix liouvillian_matrix(const ExtendedLindblad& ext) {
    const Index d = ext.dim();
    ops::require_square(ext.h_total, d, "liouvillian Hamiltonian");
    const Complex i{0.0, 1.0};
    Matrix l = -i * (ops::super_left(ext.h_total, d) -
                     ops::super_right(ext.h_total, d));
    for (const Matrix& s : ext.lindblad_ops) {
        ops::require_square(s, d, "liouvillian jump operator");
        const Matrix sds = s.adjoint() * s;
        l += ops::super_sandwich(s, s) - 0.5 * ops::super_left(sds, d) -
             0.5 * ops::super_right(sds, d);
    }
    return l;
}

ComponentState evolve_expm(const GeneralizedLindblad& g,
                           const ComponentState& init, double t) {
    gen::require_well_formed(g);
    require_well_formed(init, "evolve_expm initial state");
    if (init.n() != g.n || init.dim_sys != g.dim_sys)
        throw DimensionError("evolve_expm: state does not match generator");

    const Index d = g.extended_dim();
    const std::size_t vec_dim = static_cast<std::size_t>(d) *
                                static_cast<std::size_t>(d);
    if (vec_dim > tol::size_cap())
        throw SizeCapError("evolve_expm: vectorized dimension " +
                           std::to_string(vec_dim) + " exceeds size cap " +
                           std::to_string(tol::size_cap()));

    const ExtendedLindblad ext = gen::embed(g);
    const Matrix propagator = ops::expm(t * liouvillian_matrix(ext));
    const Vector out = propagator * ops::vec(gen::assemble_extended(init));
    return gen::extract_components(ops::unvec(out, d, d), g.n, g.dim_sys);
}

} // namespace corrproj::evo
