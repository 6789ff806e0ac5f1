// twoband.cpp — exact and rate-equation dynamics of the two-band model
#include "corrproj/twoband.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "corrproj/rng.hpp"

namespace corrproj::twoband {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_model(const TwoBandModel& m, const char* what) {
    if (m.n1 < 1 || m.n2 < 1)
        throw PreconditionError(std::string(what) +
                                ": band sizes must be at least 1");
    if (!(m.delta_eps > 0.0))
        throw PreconditionError(std::string(what) +
                                ": band width must be positive");
    if (m.couplings.rows() != m.n1 || m.couplings.cols() != m.n2)
        throw DimensionError(std::string(what) + ": couplings must be " +
                             std::to_string(m.n1) + "x" +
                             std::to_string(m.n2));
}

void require_size_cap(const TwoBandModel& m, const char* what) {
    const std::size_t dim = static_cast<std::size_t>(m.dim_total());
    if (dim > tol::size_cap())
        throw SizeCapError(std::string(what) + ": total dimension " +
                           std::to_string(dim) + " exceeds size cap " +
                           std::to_string(tol::size_cap()));
}

void require_component_pair(const Matrix& rho1_0, const Matrix& rho2_0,
                            const char* what) {
    ops::require_square(rho1_0, 2, what);
    ops::require_square(rho2_0, 2, what);
    if (ops::hermiticity_defect(rho1_0) > tol::hermiticity ||
        ops::hermiticity_defect(rho2_0) > tol::hermiticity)
        throw PreconditionError(std::string(what) +
                                ": initial components must be Hermitian");
    if (ops::min_eigenvalue_hermitian(rho1_0) < tol::psd_floor ||
        ops::min_eigenvalue_hermitian(rho2_0) < tol::psd_floor)
        throw PreconditionError(std::string(what) +
                                ": initial components must be positive");
}

// lower-band level energies are (de/n1) k for k = 1..n1, upper-band
// energies are dE + (de/n2) k
double lower_level(const TwoBandModel& m, Index k) {
    return m.delta_eps / m.n1 * static_cast<double>(k + 1);
}
double upper_level(const TwoBandModel& m, Index k) {
    return m.delta_e + m.delta_eps / m.n2 * static_cast<double>(k + 1);
}

// evaluates obs(t) = sum_jk M_jk exp(-i (E_j - E_k) t) for two coefficient
// matrices sharing the spectrum; M Hermitian, so the result is real and the
// strict upper triangle carries all off-diagonal information
void accumulate_pair_sums(const Matrix& m1, const Matrix& m2,
                          const Eigen::VectorXd& energies,
                          const std::vector<double>& t_grid,
                          std::vector<double>& out1,
                          std::vector<double>& out2) {
    const Index d = energies.size();
    const std::size_t nt = t_grid.size();
    out1.assign(nt, 0.0);
    out2.assign(nt, 0.0);
    if (nt == 0) return;

    double diag1 = 0.0, diag2 = 0.0;
    for (Index j = 0; j < d; ++j) {
        diag1 += m1(j, j).real();
        diag2 += m2(j, j).real();
    }
    for (std::size_t it = 0; it < nt; ++it) {
        out1[it] = diag1;
        out2[it] = diag2;
    }

    // uniform grids use a per-pair phase recurrence (one complex multiply per
    // time step); non-uniform grids fall back to direct exponentials
    bool uniform = nt >= 2;
    const double dt = uniform ? (t_grid[nt - 1] - t_grid[0]) /
                                    static_cast<double>(nt - 1)
                              : 0.0;
    if (uniform) {
        const double scale = 1.0 + std::abs(t_grid[0]) + std::abs(t_grid[nt - 1]);
        for (std::size_t k = 0; k < nt; ++k)
            if (std::abs(t_grid[k] - (t_grid[0] + dt * static_cast<double>(k))) >
                1e-9 * scale) {
                uniform = false;
                break;
            }
    }

    for (Index j = 0; j < d; ++j)
        for (Index k = j + 1; k < d; ++k) {
            const Complex c1 = m1(j, k);
            const Complex c2 = m2(j, k);
            if (std::abs(c1) + std::abs(c2) == 0.0) continue;
            const double omega = energies(j) - energies(k);
            if (uniform) {
                const Complex rot = std::polar(1.0, -omega * dt);
                Complex phase = std::polar(1.0, -omega * t_grid[0]);
                for (std::size_t it = 0; it < nt; ++it) {
                    out1[it] += 2.0 * (c1.real() * phase.real() -
                                       c1.imag() * phase.imag());
                    out2[it] += 2.0 * (c2.real() * phase.real() -
                                       c2.imag() * phase.imag());
                    phase *= rot;
                }
            } else {
                for (std::size_t it = 0; it < nt; ++it) {
                    const Complex phase = std::polar(1.0, -omega * t_grid[it]);
                    out1[it] += 2.0 * (c1 * phase).real();
                    out2[it] += 2.0 * (c2 * phase).real();
                }
            }
        }
}

} // namespace

Matrix sample_couplings(int n1, int n2, std::uint64_t seed) {
    if (n1 < 1 || n2 < 1)
        throw PreconditionError("sample_couplings: band sizes must be at least 1");
    rng::GaussianStream stream(seed);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix c(n1, n2);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b) {
            const double re = stream.next() * inv_sqrt2;
            const double im = stream.next() * inv_sqrt2;
            c(a, b) = Complex(re, im);
        }
    return c;
}

TwoBandModel make_model(double delta_e, double delta_eps, int n1, int n2,
                        double lambda, std::uint64_t seed) {
    TwoBandModel m;
    m.delta_e = delta_e;
    m.delta_eps = delta_eps;
    m.n1 = n1;
    m.n2 = n2;
    m.lambda = lambda;
    m.seed = seed;
    m.couplings = sample_couplings(n1, n2, seed);
    require_model(m, "make_model");
    return m;
}

Matrix build_hamiltonian(const TwoBandModel& m) {
    require_model(m, "build_hamiltonian");
    require_size_cap(m, "build_hamiltonian");
    const Index de = m.dim_env();
    const Index dim = m.dim_total();
    // basis index (s, e) -> s * dim_env + e with s = 0 the excited state,
    // environment indices 0..n1-1 the lower band, n1..n1+n2-1 the upper band
    Matrix h = Matrix::Zero(dim, dim);
    for (Index e = 0; e < de; ++e) {
        const double env =
            (e < m.n1) ? lower_level(m, e) : upper_level(m, e - m.n1);
        h(e, e) = m.delta_e + env;      // excited row
        h(de + e, de + e) = env;        // ground row
    }
    for (Index a = 0; a < m.n1; ++a)
        for (Index b = 0; b < m.n2; ++b) {
            const Complex v = m.lambda * m.couplings(a, b);
            h(a, de + m.n1 + b) = v;         // sigma_+ ⊗ |n1><n2|
            h(de + m.n1 + b, a) = std::conj(v);
        }
    return h;
}

SectorDecomposition excitation_sectors(const TwoBandModel& m) {
    require_model(m, "excitation_sectors");
    const Index de = m.dim_env();
    SectorDecomposition dec;
    for (Index idx = 0; idx < m.dim_total(); ++idx) {
        const Index s = idx / de;
        const Index e = idx % de;
        const int excitation = (s == 0 ? 1 : 0) + (e >= m.n1 ? 1 : 0);
        dec.sectors[static_cast<std::size_t>(excitation)].push_back(idx);
    }
    return dec;
}

ExactTrajectory exact_evolve(const TwoBandModel& m, const Matrix& rho1_0,
                             const Matrix& rho2_0,
                             const std::vector<double>& t_grid) {
    require_model(m, "exact_evolve");
    require_size_cap(m, "exact_evolve");
    require_component_pair(rho1_0, rho2_0, "exact_evolve");

    // one-excitation sector: n1 states |excited, lower_k> then n2 states
    // |ground, upper_k>; all dynamics happens here, the other sectors only
    // add static weights
    const Index d = m.dim_env();
    Matrix h1 = Matrix::Zero(d, d);
    for (Index k = 0; k < m.n1; ++k)
        h1(k, k) = m.delta_e + lower_level(m, k);
    for (Index k = 0; k < m.n2; ++k)
        h1(m.n1 + k, m.n1 + k) = upper_level(m, k);
    h1.block(0, m.n1, m.n1, m.n2) = m.lambda * m.couplings;
    h1.block(m.n1, 0, m.n2, m.n1) = (m.lambda * m.couplings).adjoint();

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h1);
    if (solver.info() != Eigen::Success)
        throw ContractError("exact_evolve: eigensolver failed");
    const Eigen::VectorXd& energies = solver.eigenvalues();
    const Matrix& q = solver.eigenvectors();

    // sector initial weights per level
    const double w_exc = rho1_0(0, 0).real() / m.n1;   // excited ⊗ lower band
    const double w_gnd = rho2_0(1, 1).real() / m.n2;   // ground ⊗ upper band
    Eigen::VectorXd rho0_diag(d);
    rho0_diag.head(m.n1).setConstant(w_exc);
    rho0_diag.tail(m.n2).setConstant(w_gnd);

    const Matrix m_rho = q.adjoint() * rho0_diag.asDiagonal() * q;
    // the two observables (excited-part and ground-part populations of the
    // sector) are computed through independent products so that the trace
    // and excitation columns expose genuine roundoff
    const Matrix q_exc = q.topRows(m.n1);
    const Matrix q_gnd = q.bottomRows(m.n2);
    const Matrix m_exc = m_rho.cwiseProduct((q_exc.adjoint() * q_exc).transpose());
    const Matrix m_gnd = m_rho.cwiseProduct((q_gnd.adjoint() * q_gnd).transpose());

    std::vector<double> s_exc, s_gnd;
    accumulate_pair_sums(m_exc, m_gnd, energies, t_grid, s_exc, s_gnd);

    const double static_gnd_lower = rho1_0(1, 1).real(); // zero-excitation
    const double static_exc_upper = rho2_0(0, 0).real(); // double-excitation

    ExactTrajectory traj;
    traj.times = t_grid;
    const std::size_t nt = t_grid.size();
    traj.p_e.resize(nt);
    traj.tr_rho1.resize(nt);
    traj.tr_rho2.resize(nt);
    traj.total_trace.resize(nt);
    traj.excitation.resize(nt);
    for (std::size_t it = 0; it < nt; ++it) {
        traj.p_e[it] = static_exc_upper + s_exc[it];
        traj.tr_rho1[it] = static_gnd_lower + s_exc[it];
        traj.tr_rho2[it] = static_exc_upper + s_gnd[it];
        traj.total_trace[it] =
            static_gnd_lower + static_exc_upper + s_exc[it] + s_gnd[it];
        traj.excitation[it] =
            s_exc[it] + s_gnd[it] + 2.0 * static_exc_upper;
    }
    return traj;
}

std::uint64_t ensemble_member_seed(const TwoBandModel& m, int k) {
    if (k < 0) throw PreconditionError("ensemble_member_seed: negative index");
    return rng::realization_seed(m.seed, static_cast<std::uint64_t>(k));
}

EnsembleResult ensemble_average(const TwoBandModel& m, const Matrix& rho1_0,
                                const Matrix& rho2_0, int n_realizations,
                                const std::vector<double>& t_grid) {
    require_model(m, "ensemble_average");
    if (n_realizations < 1)
        throw PreconditionError(
            "ensemble_average: at least one realization required");

    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(n_realizations));
    TwoBandModel member = m;
    for (int k = 0; k < n_realizations; ++k) {
        member.seed = ensemble_member_seed(m, k);
        member.couplings = sample_couplings(m.n1, m.n2, member.seed);
        rows.push_back(exact_evolve(member, rho1_0, rho2_0, t_grid).p_e);
    }

    EnsembleResult res;
    res.times = t_grid;
    mean_and_stderr(rows, res.p_e_mean, res.p_e_stderr);
    return res;
}

Rates rates(const TwoBandModel& m) {
    require_model(m, "rates");
    Rates r;
    r.gamma1 = kTwoPi * m.lambda * m.lambda * m.n1 / m.delta_eps;
    r.gamma2 = kTwoPi * m.lambda * m.lambda * m.n2 / m.delta_eps;
    return r;
}

std::pair<GeneralizedLindblad, Rates> tcl2_generator(const TwoBandModel& m) {
    const Rates r = rates(m);
    GeneralizedLindblad g;
    g.n = 2;
    g.dim_sys = 2;
    const Matrix h_sys = m.delta_e * ops::excited_projector();
    g.h_ops = {h_sys, h_sys};
    if (r.gamma1 > 0.0)
        g.jump_ops[{0, 1, 0}] = std::sqrt(r.gamma1) * ops::sigma_plus();
    if (r.gamma2 > 0.0)
        g.jump_ops[{1, 0, 1}] = std::sqrt(r.gamma2) * ops::sigma_minus();
    return {g, r};
}

double pe_analytic(const Rates& r, const Matrix& rho1_0, const Matrix& rho2_0,
                   double t) {
    require_component_pair(rho1_0, rho2_0, "pe_analytic");
    if (r.gamma1 < 0.0 || r.gamma2 < 0.0)
        throw PreconditionError("pe_analytic: negative rate");
    const double pe0 = rho1_0(0, 0).real() + rho2_0(0, 0).real();
    const double total = r.total();
    if (total == 0.0) return pe0;
    const double p_inf = (r.gamma1 * pe0 + r.gamma2 * rho2_0(0, 0).real() +
                          r.gamma1 * rho2_0(1, 1).real()) /
                         total;
    return p_inf + (pe0 - p_inf) * std::exp(-total * t);
}

CorrelatedProjection two_band_projection(const TwoBandModel& m) {
    require_model(m, "two_band_projection");
    const Index de = m.dim_env();
    Matrix pi1 = Matrix::Zero(de, de);
    Matrix pi2 = Matrix::Zero(de, de);
    pi1.topLeftCorner(m.n1, m.n1).setIdentity();
    pi2.bottomRightCorner(m.n2, m.n2).setIdentity();
    const Matrix rho0 =
        Matrix::Identity(de, de) / static_cast<double>(de);
    return proj::band_projection(2, {pi1, pi2}, rho0);
}

RelevantConservedSet excitation_conserved_set() {
    RelevantConservedSet cs;
    cs.c_ops.push_back(ops::excited_projector());
    cs.c_ops.push_back(ops::excited_projector() + ops::identity(2));
    return cs;
}

void mean_and_stderr(const std::vector<std::vector<double>>& rows,
                     std::vector<double>& mean, std::vector<double>& stderr_out) {
    if (rows.empty())
        throw PreconditionError("mean_and_stderr: empty sample");
    const std::size_t nt = rows.front().size();
    for (const std::vector<double>& row : rows)
        if (row.size() != nt)
            throw DimensionError("mean_and_stderr: ragged sample table");

    const std::size_t n = rows.size();
    mean.assign(nt, 0.0);
    stderr_out.assign(nt, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < nt; ++t) mean[t] += rows[k][t];
    for (std::size_t t = 0; t < nt; ++t) mean[t] /= static_cast<double>(n);
    if (n == 1) return; // a single sample has no spread estimate
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < nt; ++t) {
            const double dev = rows[k][t] - mean[t];
            stderr_out[t] += dev * dev;
        }
    for (std::size_t t = 0; t < nt; ++t)
        stderr_out[t] = std::sqrt(stderr_out[t] /
                                  (static_cast<double>(n) *
                                   static_cast<double>(n - 1)));
}

} // namespace corrproj::twoband
