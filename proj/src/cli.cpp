// cli.cpp — command-line interface: validate / evolve / twoband / compare
#include "corrproj/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrproj/io.hpp"

namespace corrproj::cli {

namespace {

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer) {
    std::ofstream os(path);
    if (!os) throw PreconditionError("cannot open output file '" + path + "'");
    writer(os);
    if (!os.good())
        throw PreconditionError("failed while writing '" + path + "'");
}

std::vector<double> uniform_grid(double t_max, int steps) {
    if (steps < 0) throw PreconditionError("steps must be nonnegative");
    if (steps > 0 && !(t_max > 0.0))
        throw PreconditionError("t_max must be positive");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k)
        grid.push_back(steps == 0 ? 0.0 : t_max * k / steps);
    return grid;
}

int do_validate(const std::string& config_path, std::ostream& out) {
    const CorrelatedProjection p =
        io::load_projection(io::read_json_file(config_path));
    const ValidationReport rep = proj::validate(p);
    out << "hermiticity_defect = " << io::format_double(rep.hermiticity_defect)
        << "\n"
        << "biorthogonality_defect = "
        << io::format_double(rep.biorthogonality_defect) << "\n"
        << "trace_defect = " << io::format_double(rep.trace_defect) << "\n"
        << "cp_min_eigenvalue = " << io::format_double(rep.cp_min_eigenvalue)
        << "\n"
        << "idempotence_defect = " << io::format_double(rep.idempotence_defect)
        << "\n"
        << "passed = " << (rep.passed ? "true" : "false") << "\n";
    return rep.passed ? 0 : 1;
}

int do_evolve(const std::string& config_path, const std::string& out_path,
              const std::optional<double>& t_max_flag,
              const std::optional<int>& steps_flag, std::ostream& out) {
    io::EvolveConfig cfg = io::load_evolve_config(io::read_json_file(config_path));
    const std::optional<double> t_max =
        t_max_flag ? t_max_flag : cfg.t_max;
    if (!t_max)
        throw PreconditionError(
            "t_max not given (config field 't_max' or flag --t-max)");
    int steps;
    if (steps_flag)
        steps = *steps_flag;
    else if (cfg.steps)
        steps = *cfg.steps;
    else
        // default resolution: ~10 steps per inverse generator norm, at least 100
        steps = std::max(100, static_cast<int>(std::ceil(
                                  10.0 * *t_max *
                                  gen::generator_norm(cfg.generator))));

    const Trajectory traj = evo::evolve_rk(cfg.generator, cfg.initial, *t_max,
                                           steps, cfg.conserved);
    write_file(out_path,
               [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });

    std::size_t flagged = 0;
    for (const StateDiagnostics& d : traj.diagnostics)
        if (d.flagged) ++flagged;
    out << "wrote " << traj.times.size() << " rows to " << out_path << "\n";
    if (flagged > 0)
        out << "warning: " << flagged
            << " time points flagged (positivity/trace violation)\n";
    return 0;
}

struct TwoBandInvocation {
    std::string config_path;
    std::string out_path;
    std::optional<double> t_max;
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
    std::optional<int> realizations;
    std::optional<double> tol;
};

struct TwoBandRun {
    io::TwoBandConfig cfg;
    double t_max = 0.0;
    int steps = 0;
    int realizations = 0;
    std::vector<double> grid;
};

TwoBandRun prepare_twoband(const TwoBandInvocation& inv) {
    TwoBandRun run;
    run.cfg = io::load_twoband_config(io::read_json_file(inv.config_path));
    if (inv.seed) {
        const TwoBandModel& m = run.cfg.model;
        run.cfg.model = twoband::make_model(m.delta_e, m.delta_eps, m.n1, m.n2,
                                            m.lambda, *inv.seed);
    }
    if (inv.realizations) run.cfg.realizations = *inv.realizations;
    if (run.cfg.realizations < 1)
        throw PreconditionError("realizations must be at least 1");

    std::optional<double> t_max = inv.t_max ? inv.t_max : run.cfg.t_max;
    if (!t_max) {
        const Rates r = twoband::rates(run.cfg.model);
        if (r.total() <= 0.0)
            throw PreconditionError(
                "t_max not given and the model has zero relaxation rate");
        t_max = 5.0 / r.total(); // five relaxation times by default
    }
    run.t_max = *t_max;
    run.steps = inv.steps ? *inv.steps : run.cfg.steps.value_or(199);
    run.realizations = run.cfg.realizations;
    run.grid = uniform_grid(run.t_max, run.steps);
    return run;
}

int do_twoband_exact(const TwoBandInvocation& inv, std::ostream& out) {
    const TwoBandRun run = prepare_twoband(inv);
    const EnsembleResult res =
        twoband::ensemble_average(run.cfg.model, run.cfg.rho1_0, run.cfg.rho2_0,
                                  run.realizations, run.grid);
    write_file(inv.out_path,
               [&](std::ostream& os) { io::write_ensemble_csv(os, res); });
    out << "wrote " << res.times.size() << " rows to " << inv.out_path << " ("
        << run.realizations << " realizations)\n";
    return 0;
}

int do_twoband_tcl2(const TwoBandInvocation& inv, std::ostream& out) {
    const TwoBandRun run = prepare_twoband(inv);
    const auto [g, r] = twoband::tcl2_generator(run.cfg.model);
    (void)r;
    ComponentState init;
    init.dim_sys = 2;
    init.components = {run.cfg.rho1_0, run.cfg.rho2_0};
    const Trajectory traj = evo::evolve_rk(
        g, init, run.t_max, run.steps, {twoband::excitation_conserved_set()});
    write_file(inv.out_path,
               [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
    out << "wrote " << traj.times.size() << " rows to " << inv.out_path << "\n";
    return 0;
}

int do_twoband_compare(const TwoBandInvocation& inv, std::ostream& out) {
    const TwoBandRun run = prepare_twoband(inv);
    const double tol = inv.tol ? *inv.tol : run.cfg.tol.value_or(0.02);

    const Rates r = twoband::rates(run.cfg.model);
    std::vector<double> tcl2(run.grid.size());
    for (std::size_t k = 0; k < run.grid.size(); ++k)
        tcl2[k] = twoband::pe_analytic(r, run.cfg.rho1_0, run.cfg.rho2_0,
                                       run.grid[k]);
    const EnsembleResult res =
        twoband::ensemble_average(run.cfg.model, run.cfg.rho1_0, run.cfg.rho2_0,
                                  run.realizations, run.grid);

    // pointwise verdict: deviation within the statistical band (3 standard
    // errors) where noise dominates, within tol where systematics dominate
    double max_dev = 0.0, max_dev_time = 0.0;
    bool pass = true;
    for (std::size_t k = 0; k < run.grid.size(); ++k) {
        const double dev = std::abs(tcl2[k] - res.p_e_mean[k]);
        if (dev > max_dev) {
            max_dev = dev;
            max_dev_time = run.grid[k];
        }
        if (dev > std::max(3.0 * res.p_e_stderr[k], tol)) pass = false;
    }

    if (!inv.out_path.empty())
        write_file(inv.out_path, [&](std::ostream& os) {
            io::write_compare_csv(os, run.grid, tcl2, res);
        });

    out << "realizations = " << run.realizations << "\n"
        << "max_abs_deviation = " << io::format_double(max_dev) << "\n"
        << "max_deviation_time = " << io::format_double(max_dev_time) << "\n"
        << "tolerance = " << io::format_double(tol) << "\n"
        << "verdict = " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int do_compare(const std::string& path_a, const std::string& path_b,
               const std::string& column, double tol, std::ostream& out) {
    const io::CsvTable a = io::read_csv_file(path_a);
    const io::CsvTable b = io::read_csv_file(path_b);
    if (a.rows() != b.rows())
        throw PreconditionError("row count mismatch: " +
                                std::to_string(a.rows()) + " vs " +
                                std::to_string(b.rows()));
    const std::vector<double>& col_a = a.columns[a.column_index(column)];
    const std::vector<double>& col_b = b.columns[b.column_index(column)];

    // when both files carry a time column the grids must agree
    const bool both_t = std::count(a.header.begin(), a.header.end(), "t") > 0 &&
                        std::count(b.header.begin(), b.header.end(), "t") > 0;
    if (both_t) {
        const std::vector<double>& ta = a.columns[a.column_index("t")];
        const std::vector<double>& tb = b.columns[b.column_index("t")];
        for (std::size_t k = 0; k < ta.size(); ++k)
            if (std::abs(ta[k] - tb[k]) >
                1e-12 * (1.0 + std::abs(ta[k]) + std::abs(tb[k])))
                throw PreconditionError("time grids do not match at row " +
                                        std::to_string(k + 1));
    }

    double max_dev = 0.0;
    for (std::size_t k = 0; k < col_a.size(); ++k)
        max_dev = std::max(max_dev, std::abs(col_a[k] - col_b[k]));
    const bool pass = max_dev <= tol;
    out << "rows = " << col_a.size() << "\n"
        << "max_abs_difference = " << io::format_double(max_dev) << "\n"
        << "tolerance = " << io::format_double(tol) << "\n"
        << "verdict = " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"correlated-projection master-equation toolkit", "corrproj"};
    app.require_subcommand(1);

    // validate
    std::string validate_config;
    CLI::App* validate_sub = app.add_subcommand(
        "validate", "check the defining conditions of a projection config");
    validate_sub->add_option("--config", validate_config, "projection JSON")
        ->required();

    // evolve
    std::string evolve_config, evolve_out;
    std::optional<double> evolve_t_max;
    std::optional<int> evolve_steps;
    CLI::App* evolve_sub = app.add_subcommand(
        "evolve", "integrate a component master equation to CSV");
    evolve_sub->add_option("--config", evolve_config, "run JSON")->required();
    evolve_sub->add_option("--out", evolve_out, "output CSV path")->required();
    evolve_sub->add_option("--t-max", evolve_t_max, "final time (overrides config)");
    evolve_sub->add_option("--steps", evolve_steps, "step count (overrides config)");

    // twoband with exact / tcl2 / compare
    TwoBandInvocation tb;
    CLI::App* twoband_sub =
        app.add_subcommand("twoband", "two-band model dynamics");
    twoband_sub->require_subcommand(1);
    CLI::App* tb_exact = twoband_sub->add_subcommand(
        "exact", "ensemble-averaged exact dynamics to CSV");
    CLI::App* tb_tcl2 = twoband_sub->add_subcommand(
        "tcl2", "coupled rate-equation trajectory to CSV");
    CLI::App* tb_compare = twoband_sub->add_subcommand(
        "compare", "exact ensemble mean vs rate-equation prediction");
    for (CLI::App* sub : {tb_exact, tb_tcl2, tb_compare}) {
        sub->add_option("--config", tb.config_path, "model JSON")->required();
        sub->add_option("--t-max", tb.t_max, "final time");
        sub->add_option("--steps", tb.steps, "grid intervals");
        sub->add_option("--seed", tb.seed, "override the model seed");
        sub->add_option("--realizations", tb.realizations,
                        "ensemble size (exact / compare)");
    }
    tb_exact->add_option("--out", tb.out_path, "output CSV path")->required();
    tb_tcl2->add_option("--out", tb.out_path, "output CSV path")->required();
    tb_compare->add_option("--out", tb.out_path, "optional deviation CSV path");
    tb_compare->add_option("--tol", tb.tol, "agreement tolerance (default 0.02)");

    // compare
    std::string cmp_a, cmp_b, cmp_column;
    double cmp_tol = 1e-8;
    CLI::App* compare_sub = app.add_subcommand(
        "compare", "compare a named column between two CSV files");
    compare_sub->add_option("file_a", cmp_a, "first CSV")->required();
    compare_sub->add_option("file_b", cmp_b, "second CSV")->required();
    compare_sub->add_option("--column", cmp_column, "column name")->required();
    compare_sub->add_option("--tol", cmp_tol,
                            "max absolute difference (default 1e-8)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate_sub) return do_validate(validate_config, out);
        if (*evolve_sub)
            return do_evolve(evolve_config, evolve_out, evolve_t_max,
                             evolve_steps, out);
        if (*tb_exact) return do_twoband_exact(tb, out);
        if (*tb_tcl2) return do_twoband_tcl2(tb, out);
        if (*tb_compare) return do_twoband_compare(tb, out);
        if (*compare_sub)
            return do_compare(cmp_a, cmp_b, cmp_column, cmp_tol, out);
        err << "no command selected\n";
        return 2;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace corrproj::cli
