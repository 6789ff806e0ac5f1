// io.hpp — JSON configuration loading and CSV serialization
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrproj/evolution.hpp"
#include "corrproj/generator.hpp"
#include "corrproj/projection.hpp"
#include "corrproj/twoband.hpp"

namespace corrproj::io {

using nlohmann::json;

// ---- JSON primitives ----
// a matrix is serialized as a row-major array of [re, im] pairs whose length
// is a perfect square; component indices (i, j) and channel labels (lambda)
// are 1-based in files and 0-based in memory

Matrix parse_matrix(const json& j, const char* what);
json matrix_json(const Matrix& m);

json read_json_file(const std::string& path);

// ---- configuration schemas ----

// {"dim_sys": int, "dim_env": int, "a_ops": [matrix...], "b_ops": [matrix...]}
CorrelatedProjection load_projection(const json& j);

// {"n": int, "dim_sys": int, "h_ops": [matrix...],
//  "jumps": [{"i": int, "j": int, "lambda": int, "op": matrix}...]}
GeneralizedLindblad load_generator(const json& j);

// {"delta_e": real, "delta_eps": real, "n1": int, "n2": int,
//  "lambda": real, "seed": int} (couplings are sampled from the seed)
TwoBandModel load_model(const json& j);

// evolve run: exactly one of "generator" or "model" (a model is expanded to
// its matched rate equation), "initial": [matrix x n], optional "t_max",
// "steps", "conserved": [[matrix x n]...]
struct EvolveConfig {
    GeneralizedLindblad generator;
    ComponentState initial;
    std::optional<double> t_max;
    std::optional<int> steps;
    std::vector<RelevantConservedSet> conserved;
};
EvolveConfig load_evolve_config(const json& j);

// two-band run: model fields plus optional "realizations", "rho1_0",
// "rho2_0" (defaults: excited system in the filled lower band, i.e.
// rho1_0 = |1><1|, rho2_0 = 0), "t_max", "steps", "tol"
struct TwoBandConfig {
    TwoBandModel model;
    Matrix rho1_0;
    Matrix rho2_0;
    int realizations = 100;
    std::optional<double> t_max;
    std::optional<int> steps;
    std::optional<double> tol;
};
TwoBandConfig load_twoband_config(const json& j);

// ---- CSV ----
// all numbers are printed with 17 significant digits (round-trip exact)

std::string format_double(double x);

// header: t,tr_rho_1..tr_rho_n[,p_e],min_eig,total_trace[,conserved_1...];
// p_e (excited population of the reduced state) appears when dim_sys == 2
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// header: t,p_e_mean,p_e_stderr
void write_ensemble_csv(std::ostream& os, const EnsembleResult& res);

// header: t,p_e_tcl2,p_e_exact_mean,p_e_stderr,abs_dev
void write_compare_csv(std::ostream& os, const std::vector<double>& times,
                       const std::vector<double>& tcl2,
                       const EnsembleResult& exact);

// numeric CSV with a header row; values tolerate surrounding whitespace
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns; // column-major

    // index of a named column; throws PreconditionError when absent
    std::size_t column_index(const std::string& name) const;
    std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

} // namespace corrproj::io
