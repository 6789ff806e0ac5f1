// generator.hpp — coupled component master equation
//   d rho_i/dt = -i[H^i, rho_i]
//                + sum_{j,lambda} ( R^{ij}_l rho_j R^{ij dag}_l
//                                   - 1/2 {R^{ji dag}_l R^{ji}_l, rho_i} )
// and its completely positive embedding on the extended space H_S ⊗ C^n
#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "corrproj/ops.hpp"
#include "corrproj/state.hpp"

namespace corrproj {

// jump operator key (i, j, lambda): transfer into component i from component j,
// decay channel lambda; all indices 0-based internally
using JumpKey = std::tuple<int, int, int>;

// component-resolved generator; the ordered map fixes the summation order
// (ascending (i, j, lambda)) so results are bit-reproducible
struct GeneralizedLindblad {
    int n = 0;
    Index dim_sys = 0;
    std::vector<Matrix> h_ops;        // H^i, one per component
    std::map<JumpKey, Matrix> jump_ops; // R^{ij}_lambda on the system space

    Index extended_dim() const { return dim_sys * n; }
};

// ordinary Lindblad generator on the extended space H_S ⊗ C^n:
// H = sum_i H^i ⊗ |i><i|, S^{ij}_l = R^{ij}_l ⊗ |i><j|
struct ExtendedLindblad {
    int n = 0;
    Index dim_sys = 0;
    Matrix h_total;                 // extended-space Hamiltonian
    std::vector<Matrix> lindblad_ops; // extended-space jump operators

    Index dim() const { return dim_sys * n; }
};

// component observables C^i_S whose weighted sum sum_i tr{C^i rho_i} is
// conserved when the stationarity condition holds
struct RelevantConservedSet {
    std::vector<Matrix> c_ops;
};

namespace gen {

// structural check; throws DimensionError on malformed members or indices
void require_well_formed(const GeneralizedLindblad& g);

// K_i contribution for one component index (0-based)
Matrix apply_k(const GeneralizedLindblad& g, int i, const ComponentState& s);

// full right-hand side (all components)
ComponentState rhs(const GeneralizedLindblad& g, const ComponentState& s);

// completely positive embedding on H_S ⊗ C^n
ExtendedLindblad embed(const GeneralizedLindblad& g);

// ordinary Lindblad action on an extended-space matrix
Matrix extended_apply(const ExtendedLindblad& ext, const Matrix& varrho);

// inverse of embed: reads H^i and R^{ij}_lambda back off the block structure;
// throws ContractError when an operator is not supported on a single block
GeneralizedLindblad from_extended(const ExtendedLindblad& ext);

// assemble the block-diagonal extended-space matrix sum_i rho_i ⊗ |i><i|
Matrix assemble_extended(const ComponentState& s);

// read the diagonal blocks of an extended-space matrix into components
ComponentState extract_components(const Matrix& varrho, int n, Index dim_sys);

// largest max-norm of an off-diagonal block of L_ext[assemble(s)];
// zero (to roundoff) because the embedded flow preserves block-diagonality
double block_defect(const ExtendedLindblad& ext, const ComponentState& s);

// max-norm defect of the stationarity condition
//   i [H^i, C^i] + sum_{j,l} ( R^{ji dag}_l C^j R^{ji}_l
//                              - 1/2 {R^{ji dag}_l R^{ji}_l, C^i} ) = 0
// maximized over components i
double conservation_defect(const GeneralizedLindblad& g,
                           const RelevantConservedSet& cs);

// value of the conserved functional sum_i tr{C^i rho_i}
double conserved_value(const RelevantConservedSet& cs, const ComponentState& s);

// block-diagonal generator with no cross-component coupling: component i
// evolves under H^i and jump list jumps[i] alone
struct LocalLindblad {
    Matrix h;
    std::vector<Matrix> jumps;
};
GeneralizedLindblad uncoupled(Index dim_sys,
                              const std::vector<LocalLindblad>& locals);

// two-level rate-table constructor: component labels eps_grid (bookkeeping
// only), gain rates gamma1(i,j) attached to sigma_+ and gamma2(i,j) attached
// to sigma_-; zero rates produce no jump operator; negative rates throw
// PreconditionError
GeneralizedLindblad energy_resolved(const std::vector<double>& eps_grid,
                                    const RealMatrix& gamma1,
                                    const RealMatrix& gamma2,
                                    const std::vector<Matrix>& h_eps);

// coarse spectral bound ||H||_2 summed with sum ||R||_2^2; step-size heuristic
double generator_norm(const GeneralizedLindblad& g);

} // namespace gen
} // namespace corrproj
