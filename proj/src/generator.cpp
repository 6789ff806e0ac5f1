// generator.cpp — coupled component generator and its extended-space embedding
#include "corrproj/generator.hpp"

#include <string>

namespace corrproj::gen {

namespace {
constexpr Complex kImag{0.0, 1.0};

std::string key_str(const JumpKey& k) {
    return "(" + std::to_string(std::get<0>(k) + 1) + "," +
           std::to_string(std::get<1>(k) + 1) + "," +
           std::to_string(std::get<2>(k) + 1) + ")";
}
} // namespace

void require_well_formed(const GeneralizedLindblad& g) {
    if (g.n <= 0)
        throw DimensionError("generator: component count must be positive");
    if (g.dim_sys <= 0)
        throw DimensionError("generator: dim_sys must be positive");
    if (static_cast<int>(g.h_ops.size()) != g.n)
        throw DimensionError("generator: expected " + std::to_string(g.n) +
                             " local Hamiltonians, got " +
                             std::to_string(g.h_ops.size()));
    for (const Matrix& h : g.h_ops)
        ops::require_square(h, g.dim_sys, "generator Hamiltonian");
    for (const auto& [key, op] : g.jump_ops) {
        const auto [i, j, lambda] = key;
        if (i < 0 || i >= g.n || j < 0 || j >= g.n)
            throw DimensionError("generator: jump key " + key_str(key) +
                                 " out of range");
        (void)lambda;
        ops::require_square(op, g.dim_sys, "generator jump operator");
    }
}

Matrix apply_k(const GeneralizedLindblad& g, int i, const ComponentState& s) {
    require_well_formed(g);
    evo::require_well_formed(s, "apply_k state");
    if (s.n() != g.n || s.dim_sys != g.dim_sys)
        throw DimensionError("apply_k: state does not match generator shape");
    if (i < 0 || i >= g.n)
        throw DimensionError("apply_k: component index out of range");

    Matrix out = -kImag * ops::commutator(g.h_ops[static_cast<std::size_t>(i)],
                                          s.components[static_cast<std::size_t>(i)]);
    // gain uses R^{ij}, loss uses the transposed-index pair R^{ji}
    for (const auto& [key, op] : g.jump_ops) {
        const auto [a, b, lambda] = key;
        (void)lambda;
        if (a == i)
            out += op * s.components[static_cast<std::size_t>(b)] * op.adjoint();
        if (b == i)
            out -= 0.5 * ops::anticommutator(
                             op.adjoint() * op,
                             s.components[static_cast<std::size_t>(i)]);
    }
    return out;
}

ComponentState rhs(const GeneralizedLindblad& g, const ComponentState& s) {
    require_well_formed(g);
    evo::require_well_formed(s, "rhs state");
    if (s.n() != g.n || s.dim_sys != g.dim_sys)
        throw DimensionError("rhs: state does not match generator shape");

    ComponentState out = evo::zeros_like(s);
    for (int i = 0; i < g.n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        out.components[ui] =
            -kImag * ops::commutator(g.h_ops[ui], s.components[ui]);
    }
    for (const auto& [key, op] : g.jump_ops) {
        const auto [i, j, lambda] = key;
        (void)lambda;
        const std::size_t ui = static_cast<std::size_t>(i);
        const std::size_t uj = static_cast<std::size_t>(j);
        out.components[ui] += op * s.components[uj] * op.adjoint();
        out.components[uj] -=
            0.5 * ops::anticommutator(op.adjoint() * op, s.components[uj]);
    }
    return out;
}

ExtendedLindblad embed(const GeneralizedLindblad& g) {
    require_well_formed(g);
    ExtendedLindblad ext;
    ext.n = g.n;
    ext.dim_sys = g.dim_sys;
    ext.h_total = Matrix::Zero(ext.dim(), ext.dim());
    for (int i = 0; i < g.n; ++i)
        ext.h_total += ops::kron(g.h_ops[static_cast<std::size_t>(i)],
                                 ops::basis_op(g.n, i, i));
    for (const auto& [key, op] : g.jump_ops) {
        const auto [i, j, lambda] = key;
        (void)lambda;
        ext.lindblad_ops.push_back(ops::kron(op, ops::basis_op(g.n, i, j)));
    }
    return ext;
}

Matrix extended_apply(const ExtendedLindblad& ext, const Matrix& varrho) {
    ops::require_square(varrho, ext.dim(), "extended_apply state");
    Matrix out = -kImag * ops::commutator(ext.h_total, varrho);
    for (const Matrix& s : ext.lindblad_ops)
        out += s * varrho * s.adjoint() -
               0.5 * ops::anticommutator(s.adjoint() * s, varrho);
    return out;
}

GeneralizedLindblad from_extended(const ExtendedLindblad& ext) {
    if (ext.n <= 0 || ext.dim_sys <= 0)
        throw DimensionError("from_extended: malformed extended generator");
    ops::require_square(ext.h_total, ext.dim(), "from_extended Hamiltonian");

    const Index ds = ext.dim_sys;
    const int n = ext.n;
    auto block = [&](const Matrix& m, int bi, int bj) {
        Matrix out(ds, ds);
        for (Index s = 0; s < ds; ++s)
            for (Index t = 0; t < ds; ++t)
                out(s, t) = m(s * n + bi, t * n + bj);
        return out;
    };
    auto off_block_norm = [&](const Matrix& m, int bi, int bj) {
        double biggest = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == bi && b == bj) continue;
                biggest = std::max(biggest, ops::max_abs(block(m, a, b)));
            }
        return biggest;
    };

    GeneralizedLindblad g;
    g.n = n;
    g.dim_sys = ds;
    double h_off = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b)
                h_off = std::max(h_off,
                                 ops::max_abs(block(ext.h_total, a, b)));
    if (h_off > tol::condition)
        throw ContractError(
            "from_extended: Hamiltonian has off-diagonal component blocks");
    for (int i = 0; i < n; ++i) g.h_ops.push_back(block(ext.h_total, i, i));

    std::map<std::pair<int, int>, int> channel_count;
    for (const Matrix& s : ext.lindblad_ops) {
        ops::require_square(s, ext.dim(), "from_extended jump operator");
        // locate the unique (i, j) block carrying the operator
        int bi = -1, bj = -1;
        double best = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const double w = ops::max_abs(block(s, a, b));
                if (w > best) {
                    best = w;
                    bi = a;
                    bj = b;
                }
            }
        if (best == 0.0) continue; // zero operator carries no channel
        if (off_block_norm(s, bi, bj) > tol::condition)
            throw ContractError(
                "from_extended: jump operator not supported on a single block");
        const int lambda = channel_count[{bi, bj}]++;
        g.jump_ops[{bi, bj, lambda}] = block(s, bi, bj);
    }
    require_well_formed(g);
    return g;
}

Matrix assemble_extended(const ComponentState& s) {
    evo::require_well_formed(s, "assemble_extended");
    const int n = static_cast<int>(s.n());
    Matrix out = Matrix::Zero(s.dim_sys * n, s.dim_sys * n);
    for (int i = 0; i < n; ++i)
        out += ops::kron(s.components[static_cast<std::size_t>(i)],
                         ops::basis_op(n, i, i));
    return out;
}

ComponentState extract_components(const Matrix& varrho, int n, Index dim_sys) {
    if (n <= 0 || dim_sys <= 0)
        throw DimensionError("extract_components: dimensions must be positive");
    ops::require_square(varrho, dim_sys * n, "extract_components");
    ComponentState s;
    s.dim_sys = dim_sys;
    for (int i = 0; i < n; ++i) {
        Matrix c(dim_sys, dim_sys);
        for (Index a = 0; a < dim_sys; ++a)
            for (Index b = 0; b < dim_sys; ++b)
                c(a, b) = varrho(a * n + i, b * n + i);
        s.components.push_back(std::move(c));
    }
    return s;
}

double block_defect(const ExtendedLindblad& ext, const ComponentState& s) {
    evo::require_well_formed(s, "block_defect state");
    if (s.n() != ext.n || s.dim_sys != ext.dim_sys)
        throw DimensionError("block_defect: state does not match generator");
    const Matrix image = extended_apply(ext, assemble_extended(s));
    const Index ds = ext.dim_sys;
    const int n = ext.n;
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (Index a = 0; a < ds; ++a)
                for (Index b = 0; b < ds; ++b)
                    defect = std::max(defect,
                                      std::abs(image(a * n + i, b * n + j)));
        }
    return defect;
}

double conservation_defect(const GeneralizedLindblad& g,
                           const RelevantConservedSet& cs) {
    require_well_formed(g);
    if (static_cast<int>(cs.c_ops.size()) != g.n)
        throw DimensionError(
            "conservation_defect: one observable per component required");
    for (const Matrix& c : cs.c_ops)
        ops::require_square(c, g.dim_sys, "conserved observable");

    // adjoint stationarity: i [H^i, C^i]
    //   + sum_{j,l} ( R^{ji dag} C^j R^{ji} - 1/2 {R^{ji dag} R^{ji}, C^i} ) = 0
    double defect = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        Matrix lhs = kImag * ops::commutator(g.h_ops[ui], cs.c_ops[ui]);
        for (const auto& [key, op] : g.jump_ops) {
            const auto [a, b, lambda] = key;
            (void)lambda;
            if (b != i) continue; // R^{ji} keys have source index i
            const std::size_t uj = static_cast<std::size_t>(a);
            lhs += op.adjoint() * cs.c_ops[uj] * op -
                   0.5 * ops::anticommutator(op.adjoint() * op, cs.c_ops[ui]);
        }
        defect = std::max(defect, ops::max_abs(lhs));
    }
    return defect;
}

double conserved_value(const RelevantConservedSet& cs, const ComponentState& s) {
    evo::require_well_formed(s, "conserved_value state");
    if (cs.c_ops.size() != s.components.size())
        throw DimensionError(
            "conserved_value: one observable per component required");
    double value = 0.0;
    for (std::size_t i = 0; i < cs.c_ops.size(); ++i)
        value += (cs.c_ops[i] * s.components[i]).trace().real();
    return value;
}

GeneralizedLindblad uncoupled(Index dim_sys,
                              const std::vector<LocalLindblad>& locals) {
    if (locals.empty())
        throw DimensionError("uncoupled: at least one component required");
    GeneralizedLindblad g;
    g.n = static_cast<int>(locals.size());
    g.dim_sys = dim_sys;
    for (int i = 0; i < g.n; ++i) {
        const LocalLindblad& loc = locals[static_cast<std::size_t>(i)];
        ops::require_square(loc.h, dim_sys, "uncoupled Hamiltonian");
        g.h_ops.push_back(loc.h);
        for (int lambda = 0; lambda < static_cast<int>(loc.jumps.size());
             ++lambda) {
            ops::require_square(loc.jumps[static_cast<std::size_t>(lambda)],
                                dim_sys, "uncoupled jump operator");
            g.jump_ops[{i, i, lambda}] =
                loc.jumps[static_cast<std::size_t>(lambda)];
        }
    }
    return g;
}

GeneralizedLindblad energy_resolved(const std::vector<double>& eps_grid,
                                    const RealMatrix& gamma1,
                                    const RealMatrix& gamma2,
                                    const std::vector<Matrix>& h_eps) {
    const int n = static_cast<int>(eps_grid.size());
    if (n <= 0)
        throw DimensionError("energy_resolved: empty label grid");
    if (gamma1.rows() != n || gamma1.cols() != n || gamma2.rows() != n ||
        gamma2.cols() != n)
        throw DimensionError("energy_resolved: rate tables must be " +
                             std::to_string(n) + "x" + std::to_string(n));
    if (static_cast<int>(h_eps.size()) != n)
        throw DimensionError(
            "energy_resolved: one local Hamiltonian per label required");
    if ((gamma1.array() < 0.0).any() || (gamma2.array() < 0.0).any())
        throw PreconditionError("energy_resolved: negative rate");

    GeneralizedLindblad g;
    g.n = n;
    g.dim_sys = 2;
    for (const Matrix& h : h_eps) {
        ops::require_square(h, 2, "energy_resolved Hamiltonian");
        g.h_ops.push_back(h);
    }
    const Matrix sp = ops::sigma_plus();
    const Matrix sm = ops::sigma_minus();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (gamma1(i, j) > 0.0)
                g.jump_ops[{i, j, 0}] = std::sqrt(gamma1(i, j)) * sp;
            if (gamma2(i, j) > 0.0)
                g.jump_ops[{i, j, 1}] = std::sqrt(gamma2(i, j)) * sm;
        }
    return g;
}

double generator_norm(const GeneralizedLindblad& g) {
    require_well_formed(g);
    double norm = 0.0;
    for (const Matrix& h : g.h_ops) norm += ops::spectral_norm(h);
    for (const auto& [key, op] : g.jump_ops) {
        (void)key;
        const double s = ops::spectral_norm(op);
        norm += s * s;
    }
    return norm;
}

} // namespace corrproj::gen
