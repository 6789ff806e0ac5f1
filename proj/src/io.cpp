// io.cpp — JSON configuration parsing and CSV serialization
#include "corrproj/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace corrproj::io {

namespace {

const json& require_field(const json& j, const char* field, const char* what) {
    if (!j.is_object())
        throw PreconditionError(std::string(what) + ": expected an object");
    const auto it = j.find(field);
    if (it == j.end())
        throw PreconditionError(std::string(what) + ": missing field '" +
                                field + "'");
    return *it;
}

double get_number(const json& j, const char* field, const char* what) {
    const json& v = require_field(j, field, what);
    if (!v.is_number())
        throw PreconditionError(std::string(what) + ": field '" + field +
                                "' must be a number");
    return v.get<double>();
}

int get_int(const json& j, const char* field, const char* what) {
    const json& v = require_field(j, field, what);
    if (!v.is_number_integer())
        throw PreconditionError(std::string(what) + ": field '" + field +
                                "' must be an integer");
    return v.get<int>();
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

Matrix parse_matrix(const json& j, const char* what) {
    if (!j.is_array())
        throw PreconditionError(std::string(what) +
                                ": matrix must be an array of [re, im] pairs");
    const std::size_t len = j.size();
    const auto d = static_cast<Index>(std::llround(std::sqrt(double(len))));
    if (d < 1 || static_cast<std::size_t>(d) * static_cast<std::size_t>(d) != len)
        throw PreconditionError(std::string(what) +
                                ": matrix length is not a positive square");
    Matrix m(d, d);
    for (std::size_t k = 0; k < len; ++k) {
        const json& entry = j[k];
        if (!entry.is_array() || entry.size() != 2 ||
            !entry[0].is_number() || !entry[1].is_number())
            throw PreconditionError(std::string(what) + ": matrix entry " +
                                    std::to_string(k) +
                                    " is not an [re, im] pair");
        m(static_cast<Index>(k) / d, static_cast<Index>(k) % d) =
            Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    return m;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw PreconditionError("config file '" + path + "' is not valid JSON: " +
                                e.what());
    }
}

CorrelatedProjection load_projection(const json& j) {
    const char* what = "projection config";
    CorrelatedProjection p;
    p.dims.dim_sys = get_int(j, "dim_sys", what);
    p.dims.dim_env = get_int(j, "dim_env", what);
    const json& a_ops = require_field(j, "a_ops", what);
    const json& b_ops = require_field(j, "b_ops", what);
    if (!a_ops.is_array() || !b_ops.is_array())
        throw PreconditionError(std::string(what) +
                                ": a_ops/b_ops must be arrays");
    for (const json& a : a_ops) p.a_ops.push_back(parse_matrix(a, what));
    for (const json& b : b_ops) p.b_ops.push_back(parse_matrix(b, what));
    proj::require_well_formed(p);
    return p;
}

GeneralizedLindblad load_generator(const json& j) {
    const char* what = "generator config";
    GeneralizedLindblad g;
    g.n = get_int(j, "n", what);
    g.dim_sys = get_int(j, "dim_sys", what);
    const json& h_ops = require_field(j, "h_ops", what);
    if (!h_ops.is_array())
        throw PreconditionError(std::string(what) + ": h_ops must be an array");
    for (const json& h : h_ops) g.h_ops.push_back(parse_matrix(h, what));
    const json& jumps = require_field(j, "jumps", what);
    if (!jumps.is_array())
        throw PreconditionError(std::string(what) + ": jumps must be an array");
    for (const json& jump : jumps) {
        // component indices and channel labels are 1-based in files
        const int i = get_int(jump, "i", what);
        const int jj = get_int(jump, "j", what);
        const int lambda = get_int(jump, "lambda", what);
        if (i < 1 || i > g.n || jj < 1 || jj > g.n)
            throw PreconditionError(std::string(what) + ": jump index (" +
                                    std::to_string(i) + "," +
                                    std::to_string(jj) + ") out of range 1.." +
                                    std::to_string(g.n));
        if (lambda < 1)
            throw PreconditionError(std::string(what) +
                                    ": channel label must be >= 1");
        const JumpKey key{i - 1, jj - 1, lambda - 1};
        if (g.jump_ops.count(key) != 0)
            throw PreconditionError(std::string(what) + ": duplicate jump key (" +
                                    std::to_string(i) + "," +
                                    std::to_string(jj) + "," +
                                    std::to_string(lambda) + ")");
        g.jump_ops[key] = parse_matrix(require_field(jump, "op", what), what);
    }
    gen::require_well_formed(g);
    return g;
}

TwoBandModel load_model(const json& j) {
    const char* what = "model config";
    const int n1 = get_int(j, "n1", what);
    const int n2 = get_int(j, "n2", what);
    if (n1 < 1 || n2 < 1)
        throw PreconditionError(std::string(what) +
                                ": band sizes must be at least 1");
    const json& seed_field = require_field(j, "seed", what);
    if (!seed_field.is_number_integer() ||
        (!seed_field.is_number_unsigned() &&
         seed_field.get<long long>() < 0))
        throw PreconditionError(std::string(what) +
                                ": seed must be a nonnegative integer");
    return twoband::make_model(get_number(j, "delta_e", what),
                               get_number(j, "delta_eps", what), n1, n2,
                               get_number(j, "lambda", what),
                               seed_field.get<std::uint64_t>());
}

EvolveConfig load_evolve_config(const json& j) {
    const char* what = "evolve config";
    if (!j.is_object())
        throw PreconditionError(std::string(what) + ": expected an object");
    const bool has_gen = j.contains("generator");
    const bool has_model = j.contains("model");
    if (has_gen == has_model)
        throw PreconditionError(std::string(what) +
                                ": exactly one of 'generator' or 'model' "
                                "must be present");

    EvolveConfig cfg;
    if (has_gen) {
        cfg.generator = load_generator(j["generator"]);
    } else {
        cfg.generator = twoband::tcl2_generator(load_model(j["model"])).first;
    }

    const json& initial = require_field(j, "initial", what);
    if (!initial.is_array() ||
        static_cast<int>(initial.size()) != cfg.generator.n)
        throw PreconditionError(std::string(what) + ": 'initial' must list " +
                                std::to_string(cfg.generator.n) +
                                " component matrices");
    cfg.initial.dim_sys = cfg.generator.dim_sys;
    for (const json& c : initial)
        cfg.initial.components.push_back(parse_matrix(c, what));
    evo::require_well_formed(cfg.initial, what);

    if (j.contains("t_max")) cfg.t_max = get_number(j, "t_max", what);
    if (j.contains("steps")) cfg.steps = get_int(j, "steps", what);
    if (j.contains("conserved")) {
        const json& sets = j["conserved"];
        if (!sets.is_array())
            throw PreconditionError(std::string(what) +
                                    ": 'conserved' must be an array of sets");
        for (const json& set : sets) {
            if (!set.is_array() ||
                static_cast<int>(set.size()) != cfg.generator.n)
                throw PreconditionError(
                    std::string(what) + ": each conserved set must list " +
                    std::to_string(cfg.generator.n) + " matrices");
            RelevantConservedSet cs;
            for (const json& c : set) cs.c_ops.push_back(parse_matrix(c, what));
            cfg.conserved.push_back(std::move(cs));
        }
    }
    return cfg;
}

TwoBandConfig load_twoband_config(const json& j) {
    const char* what = "two-band config";
    TwoBandConfig cfg;
    cfg.model = load_model(j);
    if (j.contains("realizations")) {
        cfg.realizations = get_int(j, "realizations", what);
        if (cfg.realizations < 1)
            throw PreconditionError(std::string(what) +
                                    ": realizations must be at least 1");
    }
    // default initial condition: excited system, filled lower band
    cfg.rho1_0 = ops::excited_projector();
    cfg.rho2_0 = Matrix::Zero(2, 2);
    if (j.contains("rho1_0")) cfg.rho1_0 = parse_matrix(j["rho1_0"], what);
    if (j.contains("rho2_0")) cfg.rho2_0 = parse_matrix(j["rho2_0"], what);
    if (j.contains("t_max")) cfg.t_max = get_number(j, "t_max", what);
    if (j.contains("steps")) cfg.steps = get_int(j, "steps", what);
    if (j.contains("tol")) cfg.tol = get_number(j, "tol", what);
    return cfg;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    if (traj.states.empty())
        throw PreconditionError("write_trajectory_csv: empty trajectory");
    const ComponentState& first = traj.states.front();
    const Index n = first.n();
    const bool emit_pe = first.dim_sys == 2;
    const std::size_t n_cons = traj.conserved.front().size();

    os << "t";
    for (Index i = 1; i <= n; ++i) os << ",tr_rho_" << i;
    if (emit_pe) os << ",p_e";
    os << ",min_eig,total_trace";
    for (std::size_t k = 1; k <= n_cons; ++k) os << ",conserved_" << k;
    os << "\n";

    for (std::size_t row = 0; row < traj.times.size(); ++row) {
        const ComponentState& s = traj.states[row];
        os << format_double(traj.times[row]);
        for (Index i = 0; i < n; ++i)
            os << ","
               << format_double(
                      s.components[static_cast<std::size_t>(i)].trace().real());
        if (emit_pe)
            os << "," << format_double(evo::reduced_density(s)(0, 0).real());
        os << "," << format_double(traj.diagnostics[row].min_eigenvalue);
        os << "," << format_double(traj.diagnostics[row].total_trace);
        for (const double c : traj.conserved[row])
            os << "," << format_double(c);
        os << "\n";
    }
}

void write_ensemble_csv(std::ostream& os, const EnsembleResult& res) {
    os << "t,p_e_mean,p_e_stderr\n";
    for (std::size_t k = 0; k < res.times.size(); ++k)
        os << format_double(res.times[k]) << ","
           << format_double(res.p_e_mean[k]) << ","
           << format_double(res.p_e_stderr[k]) << "\n";
}

void write_compare_csv(std::ostream& os, const std::vector<double>& times,
                       const std::vector<double>& tcl2,
                       const EnsembleResult& exact) {
    os << "t,p_e_tcl2,p_e_exact_mean,p_e_stderr,abs_dev\n";
    for (std::size_t k = 0; k < times.size(); ++k)
        os << format_double(times[k]) << "," << format_double(tcl2[k]) << ","
           << format_double(exact.p_e_mean[k]) << ","
           << format_double(exact.p_e_stderr[k]) << ","
           << format_double(std::abs(tcl2[k] - exact.p_e_mean[k])) << "\n";
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return k;
    throw PreconditionError("CSV has no column named '" + name + "'");
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line))
        throw PreconditionError("CSV input is empty");
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(trim(cell));
    if (table.header.empty())
        throw PreconditionError("CSV header has no columns");
    table.columns.resize(table.header.size());

    std::size_t row = 0;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        ++row;
        std::stringstream ls(line);
        std::size_t col = 0;
        while (std::getline(ls, cell, ',')) {
            if (col >= table.header.size())
                throw PreconditionError("CSV row " + std::to_string(row) +
                                        " has too many columns");
            try {
                table.columns[col].push_back(std::stod(trim(cell)));
            } catch (const std::exception&) {
                throw PreconditionError("CSV row " + std::to_string(row) +
                                        " has a non-numeric cell '" +
                                        trim(cell) + "'");
            }
            ++col;
        }
        if (col != table.header.size())
            throw PreconditionError("CSV row " + std::to_string(row) +
                                    " has too few columns");
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open CSV file '" + path + "'");
    return read_csv(in);
}

} // namespace corrproj::io
