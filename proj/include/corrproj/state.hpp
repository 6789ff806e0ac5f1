// state.hpp — component-resolved state rho = (rho_1, ..., rho_n) on the system space
#pragma once

#include <vector>

#include "corrproj/ops.hpp"

namespace corrproj {

// list of unnormalized system-space component matrices; physical states have
// each rho_i Hermitian and PSD with sum_i tr{rho_i} = 1
struct ComponentState {
    Index dim_sys = 0;
    std::vector<Matrix> components;

    Index n() const { return static_cast<Index>(components.size()); }
};

namespace evo {

// structural check (n >= 1, all components square dim_sys); DimensionError
void require_well_formed(const ComponentState& s, const char* what);

// sum of real parts of component traces
double total_trace(const ComponentState& s);

// elementwise linear algebra used by integrators
ComponentState zeros_like(const ComponentState& s);
void axpy(double a, const ComponentState& x, ComponentState& y); // y += a x
ComponentState scaled(const ComponentState& s, double a);

} // namespace evo
} // namespace corrproj
