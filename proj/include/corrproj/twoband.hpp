// twoband.hpp — two-level system coupled to a two-band finite environment:
// exact dynamics, ensemble statistics, and the matching coupled rate equation
#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "corrproj/generator.hpp"
#include "corrproj/projection.hpp"

namespace corrproj {

// model parameters and one sampled coupling realization c(n1, n2);
// H_S = dE sigma_+ sigma_-,
// H_E = sum_n1 (de/n1_count) n1 |n1><n1| + sum_n2 (dE + (de/n2_count) n2)|n2><n2|,
// V = lam sum c(n1,n2) sigma_+ ⊗ |n1><n2| + h.c.
struct TwoBandModel {
    double delta_e = 1.0;   // system level splitting dE
    double delta_eps = 0.5; // band width de
    int n1 = 200;           // lower-band level count
    int n2 = 200;           // upper-band level count
    double lambda = 1e-3;   // coupling strength
    std::uint64_t seed = 0; // seed that produced `couplings`
    Matrix couplings;       // n1 x n2 complex amplitudes, unit mean square

    Index dim_env() const { return static_cast<Index>(n1) + n2; }
    Index dim_total() const { return 2 * dim_env(); }
};

// golden-rule transfer rates gamma_{1,2} = 2 pi lambda^2 N_{1,2} / de
struct Rates {
    double gamma1 = 0.0; // excitation rate (into the excited state)
    double gamma2 = 0.0; // decay rate
    double total() const { return gamma1 + gamma2; }
};

// partition of the global product basis by excitation number
// C = sigma_+ sigma_- ⊗ I_E + I_S ⊗ Pi_2 (eigenvalues 0, 1, 2)
struct SectorDecomposition {
    std::array<std::vector<Index>, 3> sectors; // global indices per eigenvalue
};

// exact reduced observables on a time grid, plus roundoff diagnostics
struct ExactTrajectory {
    std::vector<double> times;
    std::vector<double> p_e;       // excited-state population
    std::vector<double> tr_rho1;   // lower-band component weight
    std::vector<double> tr_rho2;   // upper-band component weight
    std::vector<double> total_trace;
    std::vector<double> excitation; // <C>, conserved by the exact flow
};

// ensemble mean of p_e with its standard error on a time grid
struct EnsembleResult {
    std::vector<double> times;
    std::vector<double> p_e_mean;
    std::vector<double> p_e_stderr;
};

namespace twoband {

// i.i.d. complex Gaussians with E|c|^2 = 1, reproducible for a fixed seed on
// every platform; row-major fill (n1 outer, n2 inner)
Matrix sample_couplings(int n1, int n2, std::uint64_t seed);

// model with couplings freshly sampled from the seed
TwoBandModel make_model(double delta_e, double delta_eps, int n1, int n2,
                        double lambda, std::uint64_t seed);

// full Hamiltonian on H_S ⊗ H_E (dimension 2 (n1 + n2)); refuses via
// SizeCapError above the configured size cap
Matrix build_hamiltonian(const TwoBandModel& m);

// basis partition by excitation number; H is block-diagonal across it
SectorDecomposition excitation_sectors(const TwoBandModel& m);

// exact unitary evolution of rho(0) = rho1_0 ⊗ Pi_1/n1 + rho2_0 ⊗ Pi_2/n2
// (component matrices on the system space, arbitrary Hermitian PSD with
// total trace 1); observables are evaluated from the eigendecomposition of
// the one-excitation sector, so cost is one dense Hermitian solve of
// dimension n1 + n2 regardless of grid length
ExactTrajectory exact_evolve(const TwoBandModel& m, const Matrix& rho1_0,
                             const Matrix& rho2_0,
                             const std::vector<double>& t_grid);

// substream seed for ensemble member k
std::uint64_t ensemble_member_seed(const TwoBandModel& m, int k);

// mean and standard error of p_e over n_realizations fresh coupling
// samples (member k uses realization_seed(m.seed, k)); deterministic for a
// fixed (seed, n_realizations); the standard error is 0 when n = 1
EnsembleResult ensemble_average(const TwoBandModel& m, const Matrix& rho1_0,
                                const Matrix& rho2_0, int n_realizations,
                                const std::vector<double>& t_grid);

Rates rates(const TwoBandModel& m);

// coupled two-component rate equation matched to the model:
// R^{12} = sqrt(gamma1) sigma_+, R^{21} = sqrt(gamma2) sigma_-, H^i = H_S
std::pair<GeneralizedLindblad, Rates> tcl2_generator(const TwoBandModel& m);

// closed-form excited population of the rate equation:
// p_e(t) = p_inf + (p_e(0) - p_inf) exp(-(gamma1+gamma2) t) with
// p_inf = (gamma1 p_e(0) + gamma2 <1|rho2(0)|1> + gamma1 <0|rho2(0)|0>)
//         / (gamma1 + gamma2)
double pe_analytic(const Rates& r, const Matrix& rho1_0, const Matrix& rho2_0,
                   double t);

// band projection of this model: A_i = Pi_i, B_i = Pi_i / n_i
CorrelatedProjection two_band_projection(const TwoBandModel& m);

// conserved set for the rate equation: C^1 = sigma_+ sigma_-,
// C^2 = sigma_+ sigma_- + I (the excitation number)
RelevantConservedSet excitation_conserved_set();

// mean and (n > 1 ? sample standard error : 0) per column of a row-major
// sample table; fixed accumulation order, used by ensemble_average
void mean_and_stderr(const std::vector<std::vector<double>>& rows,
                     std::vector<double>& mean, std::vector<double>& stderr_out);

} // namespace twoband
} // namespace corrproj
