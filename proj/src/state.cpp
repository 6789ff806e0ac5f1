// state.cpp — component-state structural checks and linear algebra
#include "corrproj/state.hpp"

#include <string>

namespace corrproj::evo {

void require_well_formed(const ComponentState& s, const char* what) {
    if (s.dim_sys <= 0)
        throw DimensionError(std::string(what) + ": dim_sys must be positive");
    if (s.components.empty())
        throw DimensionError(std::string(what) +
                             ": at least one component required");
    for (const Matrix& c : s.components)
        ops::require_square(c, s.dim_sys, what);
}

double total_trace(const ComponentState& s) {
    double tr = 0.0;
    for (const Matrix& c : s.components) tr += c.trace().real();
    return tr;
}

ComponentState zeros_like(const ComponentState& s) {
    ComponentState z;
    z.dim_sys = s.dim_sys;
    z.components.assign(s.components.size(),
                        Matrix::Zero(s.dim_sys, s.dim_sys));
    return z;
}

void axpy(double a, const ComponentState& x, ComponentState& y) {
    for (std::size_t i = 0; i < y.components.size(); ++i)
        y.components[i] += a * x.components[i];
}

ComponentState scaled(const ComponentState& s, double a) {
    ComponentState out = s;
    for (Matrix& c : out.components) c *= a;
    return out;
}

} // namespace corrproj::evo
