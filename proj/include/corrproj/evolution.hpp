// evolution.hpp — time propagation of component states with diagnostics
#pragma once

#include <vector>

#include "corrproj/generator.hpp"
#include "corrproj/state.hpp"

namespace corrproj {

// per-time-point health record of a component state
struct StateDiagnostics {
    double min_eigenvalue = 0.0;     // min over components (hermitized)
    double hermiticity_defect = 0.0; // max over components
    double total_trace = 0.0;
    bool flagged = false;            // any violation beyond tolerance
};

// uniform-grid trajectory; conserved[k] holds the registered conserved-set
// values at times[k]
struct Trajectory {
    std::vector<double> times;
    std::vector<ComponentState> states;
    std::vector<StateDiagnostics> diagnostics;
    std::vector<std::vector<double>> conserved;
};

namespace evo {

// reduced density matrix sum_i rho_i (normalized iff the state is)
Matrix reduced_density(const ComponentState& s);

// diagnostics with violations beyond tol flagged (negative eigenvalue below
// -tol, Hermiticity defect above tol, total trace off 1 beyond tol)
StateDiagnostics check_state(const ComponentState& s, double tol);

// classic fixed-step fourth-order Runge-Kutta on the uniform grid
// t_k = k * t_max / steps, k = 0..steps (steps = 0 records only t = 0);
// diagnostics at every grid point; excursions are flagged, never aborted;
// NaN/Inf raises DivergenceError naming the step
Trajectory evolve_rk(const GeneralizedLindblad& g, const ComponentState& init,
                     double t_max, int steps,
                     const std::vector<RelevantConservedSet>& conserved = {});

// dense propagation: vectorize the embedded extended-space generator,
// apply expm(L t) to the assembled initial state, and read back the blocks;
// refuses (SizeCapError) when the vectorized dimension exceeds the size cap
ComponentState evolve_expm(const GeneralizedLindblad& g,
                           const ComponentState& init, double t);

// column-stacked matrix of the extended-space Lindblad generator,
// size dim()^2 x dim()^2
Matrix liouvillian_matrix(const ExtendedLindblad& ext);

} // namespace evo
} // namespace corrproj
