// edpqm: spectra, diagnostics, and reference-table reproduction for
// oscillators whose stiffness depends on the level energy.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "edp/equivalence.hpp"
#include "edp/errors.hpp"
#include "edp/generalsolver.hpp"
#include "edp/observables.hpp"
#include "edp/potdsl.hpp"
#include "edp/spectra.hpp"
#include "edp/tables.hpp"
#include "edp/types.hpp"

namespace {

using edp::real;
using json = nlohmann::ordered_json;

struct RunConfig {
    std::string mode;
    std::string family = "linear";
    std::string custom_f;
    std::vector<real> gammas;
    int nmax = -1; // -1 = subcommand default
    int table = 0; // 0 = all
    std::string format = "json";
    std::string out;
    std::string golden;
    std::string v0 = "0.5*x^2";
    std::string v1 = "0.5*x^2";
    std::string g_expr;
    std::string scan;
    real scan_lo = 0.05, scan_hi = 12.0;
    int grid = 2001;
    real domain = 0.0;
    int cells = 200;
    int level = 0;
    real a_coeff = 0.5;
    real k_coeff = 0.0;
    bool k_given = false;
    bool gamma_given = false;
    bool literal_k = false;
    real dx = 1e-3;
    int power = 1;
};

std::string fmt(real v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_fixed(real v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void load_config(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw edp::ConfigError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw edp::ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    if (!doc.is_object())
        throw edp::ConfigError("config root must be a JSON object");
    static const std::set<std::string> known = {
        "mode",   "family", "custom_f", "gamma",  "nmax",     "table",
        "format", "out",    "golden_dir", "v0",   "v1",       "g",
        "scan",   "grid",   "domain",   "cells",  "level",    "a",
        "k",      "literal_k", "dx",    "power"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key))
            throw edp::ConfigError("unknown config key \"" + key + "\"");
        try {
            if (key == "mode") cfg.mode = value.get<std::string>();
            else if (key == "family") cfg.family = value.get<std::string>();
            else if (key == "custom_f") cfg.custom_f = value.get<std::string>();
            else if (key == "gamma") {
                cfg.gammas.clear();
                if (value.is_array())
                    for (const auto& v : value) cfg.gammas.push_back(v.get<real>());
                else
                    cfg.gammas.push_back(value.get<real>());
                cfg.gamma_given = true;
            } else if (key == "nmax") cfg.nmax = value.get<int>();
            else if (key == "table") cfg.table = value.get<int>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "golden_dir") cfg.golden = value.get<std::string>();
            else if (key == "v0") cfg.v0 = value.get<std::string>();
            else if (key == "v1") cfg.v1 = value.get<std::string>();
            else if (key == "g") cfg.g_expr = value.get<std::string>();
            else if (key == "scan") {
                if (value.is_array() && value.size() == 2) {
                    cfg.scan_lo = value[0].get<real>();
                    cfg.scan_hi = value[1].get<real>();
                } else {
                    cfg.scan = value.get<std::string>();
                }
            } else if (key == "grid") cfg.grid = value.get<int>();
            else if (key == "domain") cfg.domain = value.get<real>();
            else if (key == "cells") cfg.cells = value.get<int>();
            else if (key == "level") cfg.level = value.get<int>();
            else if (key == "a") cfg.a_coeff = value.get<real>();
            else if (key == "k") { cfg.k_coeff = value.get<real>(); cfg.k_given = true; }
            else if (key == "literal_k") cfg.literal_k = value.get<bool>();
            else if (key == "dx") cfg.dx = value.get<real>();
            else if (key == "power") cfg.power = value.get<int>();
        } catch (const json::exception& e) {
            throw edp::ConfigError("bad value for config key \"" + key +
                                   "\": " + e.what());
        }
    }
}

void parse_scan(RunConfig& cfg) {
    if (cfg.scan.empty()) return;
    const auto sep = cfg.scan.find(':');
    if (sep == std::string::npos)
        throw edp::ConfigError("--scan expects lo:hi, got \"" + cfg.scan + "\"");
    try {
        cfg.scan_lo = std::stod(cfg.scan.substr(0, sep));
        cfg.scan_hi = std::stod(cfg.scan.substr(sep + 1));
    } catch (const std::exception&) {
        throw edp::ConfigError("--scan expects numbers lo:hi, got \"" +
                               cfg.scan + "\"");
    }
}

edp::spectra::EDependence make_dependence(const RunConfig& cfg) {
    using edp::spectra::EDependence;
    if (cfg.family == "linear") return EDependence::linear();
    if (cfg.family == "sqrt") return EDependence::sqrt();
    if (cfg.family == "quadratic") return EDependence::quadratic();
    if (cfg.family == "custom") {
        if (cfg.custom_f.empty())
            throw edp::ConfigError("family custom needs custom_f");
        return EDependence::custom_f(edp::potdsl::parse(cfg.custom_f));
    }
    throw edp::ConfigError("unknown family \"" + cfg.family +
                           "\" (linear|sqrt|quadratic|custom)");
}

void validate_common(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json")
        throw edp::ConfigError("format must be csv or json");
    if (cfg.nmax < -1)
        throw edp::ConfigError("nmax must be non-negative");
    if (!(cfg.scan_hi > cfg.scan_lo))
        throw edp::ConfigError("scan window must satisfy lo < hi");
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.out);
    if (!out) throw edp::ConfigError("cannot write output file " + cfg.out);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

// ---------------------------------------------------------------- spectrum
int cmd_spectrum(RunConfig cfg) {
    if (cfg.nmax < 0) cfg.nmax = 8;
    if (cfg.gammas.empty()) cfg.gammas = {-0.1};
    const auto dep = make_dependence(cfg);
    bool truncated = false;

    json out_doc;
    out_doc["mode"] = "spectrum";
    out_doc["family"] = cfg.family;
    json scans = json::array();
    std::ostringstream csv;
    csv << "family,gamma,n,energy,lambda,norm_sq,second_branch\n";

    for (const real g : cfg.gammas) {
        const edp::spectra::OscillatorModel model{g, dep};
        json block;
        block["gamma"] = g;
        json levels = json::array();
        if (cfg.family == "custom") {
            for (int n = 0; n <= cfg.nmax; ++n) {
                for (const auto& st : edp::spectra::solve_custom(
                         model, n, cfg.scan_lo, cfg.scan_hi)) {
                    json row;
                    row["n"] = st.n;
                    row["energy"] = st.energy;
                    row["lambda"] = st.lambda;
                    row["norm_sq"] = st.norm_sq;
                    levels.push_back(row);
                    csv << cfg.family << ',' << fmt(g) << ',' << st.n << ','
                        << fmt(st.energy) << ',' << fmt(st.lambda) << ','
                        << fmt(st.norm_sq) << ",\n";
                }
            }
        } else {
            const auto rep = edp::spectra::spectrum_scan(model, cfg.nmax);
            for (const auto& rec : rep.levels) {
                json row;
                row["n"] = rec.state.n;
                row["energy"] = rec.state.energy;
                row["lambda"] = rec.state.lambda;
                row["norm_sq"] = rec.state.norm_sq;
                if (rec.second_branch) row["second_branch"] = *rec.second_branch;
                levels.push_back(row);
                csv << cfg.family << ',' << fmt(g) << ',' << rec.state.n << ','
                    << fmt(rec.state.energy) << ',' << fmt(rec.state.lambda)
                    << ',' << fmt(rec.state.norm_sq) << ','
                    << (rec.second_branch ? fmt(*rec.second_branch) : "")
                    << '\n';
            }
            if (rep.asymptote) block["asymptote"] = *rep.asymptote;
            if (rep.first_complex_level) {
                block["first_complex_level"] = *rep.first_complex_level;
                if (*rep.first_complex_level <= cfg.nmax) truncated = true;
            }
        }
        block["levels"] = std::move(levels);
        scans.push_back(std::move(block));
    }
    out_doc["scans"] = std::move(scans);

    write_output(cfg, cfg.format == "csv" ? csv.str() : out_doc.dump(2));
    return truncated ? 3 : 0;
}

// ------------------------------------------------------------------ tables
int cmd_tables(RunConfig cfg) {
    const std::string dir = edp::tables::golden_dir(cfg.golden);
    std::vector<int> ids;
    if (cfg.table == 0)
        ids = {1, 2, 3, 4, 5};
    else if (cfg.table >= 1 && cfg.table <= 5)
        ids = {cfg.table};
    else
        throw edp::ConfigError("table must be 1..5 (or 0 for all)");

    bool all_pass = true;
    std::ostringstream csv;
    csv << "table_id,row_key,col_key,computed,paper,abs_diff,status\n";
    json out_doc;
    out_doc["mode"] = "tables";
    json jtables = json::array();

    for (const int id : ids) {
        const auto cells = edp::tables::compare_table(id, dir);
        int passed = 0;
        json rows = json::array();
        for (const auto& c : cells) {
            if (c.pass) ++passed;
            all_pass = all_pass && c.pass;
            csv << c.table << ',' << c.row_key << ',' << c.col_key << ','
                << fmt_fixed(c.computed, 6) << ',' << c.reference_text << ','
                << fmt(c.abs_diff) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
            json row;
            row["table_id"] = c.table;
            row["row_key"] = c.row_key;
            row["col_key"] = c.col_key;
            row["computed"] = c.computed;
            row["paper"] = c.reference_text;
            row["abs_diff"] = c.abs_diff;
            row["status"] = c.pass ? "PASS" : "FAIL";
            rows.push_back(std::move(row));
        }
        json block;
        block["table_id"] = id;
        block["cells"] = static_cast<int>(cells.size());
        block["passed"] = passed;
        block["rows"] = std::move(rows);
        jtables.push_back(std::move(block));
    }
    out_doc["tables"] = std::move(jtables);
    out_doc["all_pass"] = all_pass;

    write_output(cfg, cfg.format == "csv" ? csv.str() : out_doc.dump(2));
    return all_pass ? 0 : 3;
}

// ------------------------------------------------------------------- solve
int cmd_solve(RunConfig cfg) {
    if (cfg.nmax < 0) cfg.nmax = cfg.level;
    std::string g_text = cfg.g_expr;
    if (g_text.empty()) {
        // convenience: derive the coupling from a named family and gamma
        const real g0 = cfg.gammas.empty() ? -0.1 : cfg.gammas.front();
        std::string f_text;
        if (cfg.family == "linear") f_text = "E";
        else if (cfg.family == "sqrt") f_text = "sqrt(E)";
        else if (cfg.family == "quadratic") f_text = "E^2";
        else if (cfg.family == "custom" && !cfg.custom_f.empty())
            f_text = "(" + cfg.custom_f + ")";
        else
            throw edp::ConfigError("solve needs g or a builtin family");
        g_text = "(" + fmt(g0) + ")*(" + f_text + ")";
    }

    edp::generalsolver::GeneralPotential pot;
    pot.v0 = edp::potdsl::parse(cfg.v0);
    pot.v1 = edp::potdsl::parse(cfg.v1);
    pot.g = edp::potdsl::parse(g_text);
    pot.domain_halfwidth = cfg.domain;
    pot.grid_points = cfg.grid;

    json out_doc;
    out_doc["mode"] = "solve";
    out_doc["v0"] = edp::potdsl::pretty(*pot.v0);
    out_doc["v1"] = edp::potdsl::pretty(*pot.v1);
    out_doc["g"] = edp::potdsl::pretty(*pot.g);
    out_doc["scan"] = {cfg.scan_lo, cfg.scan_hi};
    json jlevels = json::array();
    std::ostringstream csv;
    csv << "n,index,z,bracket_lo,bracket_hi,residual,gram_min_singular,"
           "independent\n";

    for (int n = cfg.level; n <= std::max(cfg.level, cfg.nmax); ++n) {
        const auto rep = edp::generalsolver::find_fixed_points(
            pot, n, cfg.scan_lo, cfg.scan_hi, cfg.cells);
        const auto gram = edp::generalsolver::independence_check(rep.roots);
        json block;
        block["n"] = n;
        json jroots = json::array();
        for (const auto& r : rep.roots) {
            const real again =
                edp::generalsolver::eigen_of_fixed_z(pot, r.z, n).energy;
            const real residual = std::abs(again - r.z);
            json row;
            row["index"] = r.index;
            row["z"] = r.z;
            row["bracket"] = {r.bracket.first, r.bracket.second};
            row["residual"] = residual;
            jroots.push_back(std::move(row));
            csv << n << ',' << r.index << ',' << fmt(r.z) << ','
                << fmt(r.bracket.first) << ',' << fmt(r.bracket.second) << ','
                << fmt(residual) << ','
                << (rep.roots.empty() ? "" : fmt(gram.smallest_singular_value))
                << ',' << (gram.independent ? "yes" : "no") << '\n';
        }
        block["roots"] = std::move(jroots);
        json jgaps = json::array();
        for (const auto& gap : rep.gaps) {
            json jg;
            jg["z_lo"] = gap.z_lo;
            jg["z_hi"] = gap.z_hi;
            jg["reason"] = gap.reason;
            jgaps.push_back(std::move(jg));
        }
        block["gaps"] = std::move(jgaps);
        if (!rep.roots.empty()) {
            block["gram_min_singular"] = gram.smallest_singular_value;
            block["independent"] = gram.independent;
        }
        jlevels.push_back(std::move(block));
    }
    out_doc["levels"] = std::move(jlevels);

    write_output(cfg, cfg.format == "csv" ? csv.str() : out_doc.dump(2));
    return 0;
}

// ------------------------------------------------------------- equivalence
int cmd_equivalence(RunConfig cfg) {
    if (cfg.nmax < 0) cfg.nmax = 4;
    real gamma = cfg.gammas.empty() ? -0.1 : cfg.gammas.front();
    if (cfg.k_given && !cfg.gamma_given) gamma = -2.0 * cfg.k_coeff;
    if (gamma >= 0.0)
        throw edp::ConfigError(
            "equivalence needs a negative gamma (the transform factor must "
            "stay positive)");

    const auto check =
        edp::equivalence::cross_check_toy(gamma, cfg.nmax, cfg.literal_k);
    edp::equivalence::LinearEModel model{cfg.a_coeff,
                                         cfg.k_given ? cfg.k_coeff
                                                     : check.k_coeff};

    json out_doc;
    out_doc["mode"] = "equivalence";
    out_doc["a"] = model.a_coeff;
    out_doc["k"] = model.k_coeff;
    out_doc["literal_k"] = cfg.literal_k;
    out_doc["gamma"] = gamma;
    out_doc["supremum"] = edp::equivalence::supremum(model);

    std::ostringstream csv;
    csv << "n,transformed_energy,toy_energy,abs_diff,hamiltonian_residual\n";
    json rows = json::array();
    real max_diff = 0.0, max_resid = 0.0;
    for (const auto& r : check.rows) {
        const real resid =
            edp::equivalence::hamiltonian_residual_max(model, r.n, cfg.dx);
        max_diff = std::max(max_diff, r.diff);
        max_resid = std::max(max_resid, resid);
        json row;
        row["n"] = r.n;
        row["transformed_energy"] = r.transformed;
        row["toy_energy"] = r.toy;
        row["abs_diff"] = r.diff;
        row["hamiltonian_residual"] = resid;
        rows.push_back(std::move(row));
        csv << r.n << ',' << fmt(r.transformed) << ',' << fmt(r.toy) << ','
            << fmt(r.diff) << ',' << fmt(resid) << '\n';
    }
    out_doc["levels"] = std::move(rows);
    out_doc["max_energy_diff"] = max_diff;
    out_doc["max_hamiltonian_residual"] = max_resid;

    // orthonormality of the transformed states under the plain product
    real gram_dev = 0.0, product_dev = 0.0;
    for (int i = 0; i <= cfg.nmax; ++i) {
        for (int j = i; j <= cfg.nmax; ++j) {
            const auto pp = edp::equivalence::pair_product(model, i, j, cfg.dx);
            const real want = (i == j) ? 1.0 : 0.0;
            gram_dev = std::max(gram_dev, std::abs(pp.via_plain_exact - want));
            product_dev = std::max(
                product_dev, std::abs(pp.via_modified_grid - pp.via_plain_exact));
        }
    }
    out_doc["gram_max_deviation"] = gram_dev;
    out_doc["product_route_max_deviation"] = product_dev;

    // pathology panel: the sign-flipped coupling loses positivity
    {
        const real k = model.k_coeff;
        const std::string v1_text = fmt(k) + "*x^2";
        const auto expr = edp::potdsl::parse(v1_text);
        const real x_max = std::max(10.0, 2.0 / std::sqrt(k));
        const auto kap = edp::equivalence::check_kappa_positive(*expr, x_max);
        json panel;
        panel["gamma"] = 2.0 * k;
        panel["factor"] = "1-" + v1_text;
        panel["positive"] = kap.positive;
        if (kap.crossing) panel["fails_at"] = *kap.crossing;
        out_doc["pathology_panel"] = std::move(panel);
    }

    write_output(cfg, cfg.format == "csv" ? csv.str() : out_doc.dump(2));
    return 0;
}

// ----------------------------------------------------------------- moments
int cmd_moments(RunConfig cfg) {
    if (cfg.nmax < 0) cfg.nmax = 4;
    if (cfg.family == "custom")
        throw edp::ConfigError("moments covers the builtin families");
    if (cfg.gammas.empty()) cfg.gammas = {-0.1};
    const auto dep = make_dependence(cfg);
    const int power = (cfg.power == 1) ? 2 : cfg.power; // moments default x^2

    json out_doc;
    out_doc["mode"] = "moments";
    out_doc["family"] = cfg.family;
    out_doc["power"] = power;
    json rows = json::array();
    std::ostringstream csv;
    csv << "family,gamma,n,power,value,leading_factor,critical_order\n";
    for (const real g : cfg.gammas) {
        const edp::spectra::OscillatorModel model{g, dep};
        for (int n = 0; n <= cfg.nmax; ++n) {
            const auto st = edp::spectra::solve(model, n);
            const real value = edp::observables::moment(st, power);
            std::optional<real> factor;
            std::optional<int> critical;
            try {
                factor = edp::observables::moment_leading_factor(st, power);
                critical = edp::observables::critical_moment_order(st);
            } catch (const edp::NoCriticalOrder&) {
                // factor stays positive at every order
            } catch (const std::invalid_argument&) {
                // family without a leading-factor form
            }
            json row;
            row["gamma"] = g;
            row["n"] = n;
            row["value"] = value;
            if (factor) row["leading_factor"] = *factor;
            if (critical) row["critical_order"] = *critical;
            rows.push_back(std::move(row));
            csv << cfg.family << ',' << fmt(g) << ',' << n << ',' << power
                << ',' << fmt(value) << ','
                << (factor ? fmt(*factor) : "") << ','
                << (critical ? std::to_string(*critical) : "") << '\n';
        }
    }
    out_doc["rows"] = std::move(rows);
    write_output(cfg, cfg.format == "csv" ? csv.str() : out_doc.dump(2));
    return 0;
}

// ----------------------------------------------------------------- sumrule
int cmd_sumrule(RunConfig cfg) {
    if (cfg.nmax < 0) cfg.nmax = 7;
    if (cfg.family != "linear" && cfg.family != "sqrt")
        throw edp::ConfigError("sumrule covers the linear and sqrt families");
    if (cfg.gammas.empty()) cfg.gammas = {-0.1};
    const auto dep = make_dependence(cfg);

    json out_doc;
    out_doc["mode"] = "sumrule";
    out_doc["family"] = cfg.family;
    json blocks = json::array();
    std::ostringstream csv;
    csv << "family,gamma,n,partial_sum,closed_form\n";
    for (const real g : cfg.gammas) {
        const edp::spectra::OscillatorModel model{g, dep};
        const auto rep = edp::observables::dipole_sum_rule(model, cfg.nmax);
        json block;
        block["gamma"] = g;
        json partials = json::array();
        for (const auto& [n, v] : rep.partial_sums) {
            json row;
            row["n"] = n;
            row["sum"] = v;
            partials.push_back(std::move(row));
            csv << cfg.family << ',' << fmt(g) << ',' << n << ',' << fmt(v)
                << ','
                << (rep.closed_form ? fmt(*rep.closed_form) : "") << '\n';
        }
        block["partial_sums"] = std::move(partials);
        if (rep.closed_form) block["closed_form"] = *rep.closed_form;
        if (cfg.family == "linear") {
            const auto avg = edp::observables::double_commutator_average(model);
            block["rational_operator_average"] = avg.value;
            block["quadrature_fallback"] = avg.used_fallback;
        }
        blocks.push_back(std::move(block));
    }
    out_doc["scans"] = std::move(blocks);
    write_output(cfg, cfg.format == "csv" ? csv.str() : out_doc.dump(2));
    return 0;
}

// ----------------------------------------------------------------- closure
int cmd_closure(RunConfig cfg) {
    if (cfg.nmax < 0) cfg.nmax = 5;
    if (cfg.family == "custom")
        throw edp::ConfigError("closure covers the builtin families");
    if (cfg.gammas.empty()) cfg.gammas = {0.5};
    const auto dep = make_dependence(cfg);

    json out_doc;
    out_doc["mode"] = "closure";
    out_doc["family"] = cfg.family;
    out_doc["j"] = cfg.level;
    out_doc["power"] = cfg.power;
    json blocks = json::array();
    std::ostringstream csv;
    csv << "family,gamma,j,power,n,partial_sum,direct_moment\n";
    for (const real g : cfg.gammas) {
        const edp::spectra::OscillatorModel model{g, dep};
        const auto rep =
            edp::observables::closure_sum(model, cfg.level, cfg.power, cfg.nmax);
        json block;
        block["gamma"] = g;
        json partials = json::array();
        for (const auto& [n, v] : rep.partial_sums) {
            json row;
            row["n"] = n;
            row["sum"] = v;
            partials.push_back(std::move(row));
            csv << cfg.family << ',' << fmt(g) << ',' << cfg.level << ','
                << cfg.power << ',' << n << ',' << fmt(v) << ','
                << fmt(rep.direct_moment) << '\n';
        }
        block["partial_sums"] = std::move(partials);
        block["direct_moment"] = rep.direct_moment;
        blocks.push_back(std::move(block));
    }
    out_doc["scans"] = std::move(blocks);
    write_output(cfg, cfg.format == "csv" ? csv.str() : out_doc.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // the config file seeds defaults; flags parsed afterwards override it
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                load_config(argv[i + 1], cfg);
            } else if (arg.rfind("--config=", 0) == 0) {
                load_config(arg.substr(9), cfg);
            }
        }
    } catch (const edp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{
        "spectra and diagnostics of oscillators with energy-dependent "
        "stiffness"};
    app.require_subcommand(0, 1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flat object)");
    app.add_option("--family", cfg.family,
                   "energy dependence: linear|sqrt|quadratic|custom");
    app.add_option("--custom-f", cfg.custom_f, "f(E) expression for custom");
    app.add_option("--gamma", cfg.gammas, "coupling values (comma list)")
        ->delimiter(',');
    app.add_option("--nmax", cfg.nmax, "highest level index");
    app.add_option("--table", cfg.table, "reference table id (0 = all)");
    app.add_option("--format", cfg.format, "output format: csv|json");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--golden", cfg.golden, "reference data directory");
    app.add_option("--v0", cfg.v0, "base well expression v0(x)");
    app.add_option("--v1", cfg.v1, "coupled shape expression v1(x)");
    app.add_option("--g", cfg.g_expr, "coupling expression g(E)");
    app.add_option("--scan", cfg.scan, "search window lo:hi");
    app.add_option("--grid", cfg.grid, "grid points for the general solver");
    app.add_option("--domain", cfg.domain, "box half width (0 = automatic)");
    app.add_option("--cells", cfg.cells, "scan lattice cells");
    app.add_option("--level", cfg.level, "level index (solve, closure)");
    auto* opt_a = app.add_option("--a", cfg.a_coeff, "well coefficient A");
    auto* opt_k = app.add_option("--k", cfg.k_coeff, "coupling coefficient K");
    app.add_flag("--literal-k", cfg.literal_k,
                 "use K = |gamma| instead of |gamma|/2");
    app.add_option("--dx", cfg.dx, "grid spacing for operator checks");
    app.add_option("--power", cfg.power, "operator power x^power");
    (void)opt_a;

    auto* sub_spectrum =
        app.add_subcommand("spectrum", "self-consistent levels per gamma");
    auto* sub_tables =
        app.add_subcommand("tables", "reproduce the reference tables");
    auto* sub_solve =
        app.add_subcommand("solve", "general fixed-point solver");
    auto* sub_equivalence = app.add_subcommand(
        "equivalence", "transformed-problem verification report");
    auto* sub_moments = app.add_subcommand("moments", "moment diagnostics");
    auto* sub_sumrule = app.add_subcommand("sumrule", "dipole strength sums");
    auto* sub_closure = app.add_subcommand("closure", "completeness sums");
    for (auto* sub : {sub_spectrum, sub_tables, sub_solve, sub_equivalence,
                      sub_moments, sub_sumrule, sub_closure})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the diagnostic
        return 2;
    }

    std::string mode = cfg.mode;
    if (app.got_subcommand(sub_spectrum)) mode = "spectrum";
    else if (app.got_subcommand(sub_tables)) mode = "tables";
    else if (app.got_subcommand(sub_solve)) mode = "solve";
    else if (app.got_subcommand(sub_equivalence)) mode = "equivalence";
    else if (app.got_subcommand(sub_moments)) mode = "moments";
    else if (app.got_subcommand(sub_sumrule)) mode = "sumrule";
    else if (app.got_subcommand(sub_closure)) mode = "closure";

    if (opt_k->count() > 0) cfg.k_given = true;
    if (app.count("--gamma") > 0) cfg.gamma_given = true;

    try {
        parse_scan(cfg);
        validate_common(cfg);
        if (mode == "spectrum") return cmd_spectrum(cfg);
        if (mode == "tables") return cmd_tables(cfg);
        if (mode == "solve") return cmd_solve(cfg);
        if (mode == "equivalence") return cmd_equivalence(cfg);
        if (mode == "moments") return cmd_moments(cfg);
        if (mode == "sumrule") return cmd_sumrule(cfg);
        if (mode == "closure") return cmd_closure(cfg);
        throw edp::ConfigError(
            "no subcommand given (spectrum|tables|solve|equivalence|moments|"
            "sumrule|closure)");
    } catch (const edp::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const edp::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const edp::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const edp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
