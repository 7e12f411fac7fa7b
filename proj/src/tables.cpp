#include "edp/tables.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "edp/errors.hpp"
#include "edp/observables.hpp"
#include "edp/spectra.hpp"

#ifndef EDPQM_GOLDEN_DIR_DEFAULT
#define EDPQM_GOLDEN_DIR_DEFAULT ""
#endif

namespace edp::tables {

namespace {

using spectra::EDependence;
using spectra::OscillatorModel;

const std::vector<real> kCouplings = {0.01, 0.05, 0.10, 0.25, 0.50,
                                      -0.01, -0.05, -0.10, -0.25, -0.50};

std::string signed_key(real g) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%+.2f", g);
    return buf;
}

std::string plain_key(real g) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", g);
    return buf;
}

real partial_at(const observables::ClosureReport& rep, int n) {
    for (const auto& [k, v] : rep.partial_sums)
        if (k == n) return v;
    throw std::invalid_argument("partial sum index out of range");
}

void push(std::vector<Cell>& out, int table, const std::string& row,
          const std::string& col, real value) {
    Cell c;
    c.table = table;
    c.row_key = row;
    c.col_key = col;
    c.computed = value;
    out.push_back(std::move(c));
}

std::vector<Cell> table1() {
    std::vector<Cell> out;
    for (const real g : kCouplings) {
        const OscillatorModel m{g, EDependence::linear()};
        const auto key = signed_key(g);
        const auto closure = observables::closure_sum(m, 0, 1, 3);
        push(out, 1, key, "exact", closure.direct_moment);
        push(out, 1, key, "linear_approx", 0.5 * (1.0 - 0.75 * g));
        push(out, 1, key, "nmax1", partial_at(closure, 1));
        push(out, 1, key, "nmax3", partial_at(closure, 3));
    }
    return out;
}

std::vector<Cell> table2() {
    std::vector<Cell> out;
    for (const real g : kCouplings) {
        const OscillatorModel m{g, EDependence::linear()};
        const auto key = signed_key(g);
        const auto closure = observables::closure_sum(m, 0, 2, 6);
        push(out, 2, key, "exact", closure.direct_moment);
        push(out, 2, key, "linear_approx", 0.75 * (1.0 - 1.5 * g));
        push(out, 2, key, "nmax2", partial_at(closure, 2));
        push(out, 2, key, "nmax4", partial_at(closure, 4));
        push(out, 2, key, "nmax6", partial_at(closure, 6));
    }
    return out;
}

std::vector<Cell> table3() {
    std::vector<Cell> out;
    for (const real g : kCouplings) {
        const OscillatorModel m{g, EDependence::linear()};
        const auto key = signed_key(g);
        const auto rule = observables::dipole_sum_rule(m, 7);
        auto at = [&](int n) {
            for (const auto& [k, v] : rule.partial_sums)
                if (k == n) return v;
            throw std::invalid_argument("sum-rule index out of range");
        };
        push(out, 3, key, "nmax1", at(1));
        push(out, 3, key, "nmax3", at(3));
        push(out, 3, key, "nmax5", at(5));
        push(out, 3, key, "nmax7", at(7));
        push(out, 3, key, "exact", rule.closed_form.value());
    }
    return out;
}

std::vector<Cell> table4() {
    std::vector<Cell> out;
    for (const real g : {0.01, 0.05, 0.10, 0.25, 0.50}) {
        const auto key = plain_key(g);
        const OscillatorModel pos{g, EDependence::sqrt()};
        const OscillatorModel neg{-g, EDependence::sqrt()};
        push(out, 4, key, "psi2_pos", observables::closure_correction(pos, 2, 0));
        push(out, 4, key, "psi4_pos", observables::closure_correction(pos, 4, 0));
        push(out, 4, key, "psi2_neg", observables::closure_correction(neg, 2, 0));
        push(out, 4, key, "psi4_neg", observables::closure_correction(neg, 4, 0));
    }
    return out;
}

std::vector<Cell> table5() {
    std::vector<Cell> out;
    for (const real g : kCouplings) {
        const OscillatorModel m{g, EDependence::sqrt()};
        const auto key = signed_key(g);
        const auto closure = observables::closure_sum(m, 0, 1, 5);
        push(out, 5, key, "nmax1", partial_at(closure, 1));
        push(out, 5, key, "nmax3", partial_at(closure, 3));
        push(out, 5, key, "nmax5", partial_at(closure, 5));
        push(out, 5, key, "exact", closure.direct_moment);
    }
    return out;
}

} // namespace

std::vector<Cell> compute_table(int id) {
    switch (id) {
        case 1: return table1();
        case 2: return table2();
        case 3: return table3();
        case 4: return table4();
        case 5: return table5();
        default:
            throw ConfigError("table id must be 1..5, got " + std::to_string(id));
    }
}

std::string golden_dir(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("EDPQM_GOLDEN_DIR"); env && *env)
        return env;
    return EDPQM_GOLDEN_DIR_DEFAULT;
}

std::vector<GoldenEntry> load_golden(int id, const std::string& dir) {
    const std::string path = dir + "/table" + std::to_string(id) + ".csv";
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open reference file " + path);
    std::vector<GoldenEntry> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) { // header row
            first = false;
            continue;
        }
        std::istringstream ss(line);
        GoldenEntry e;
        std::string value_text;
        if (!std::getline(ss, e.row, ',') || !std::getline(ss, e.col, ',') ||
            !std::getline(ss, value_text))
            throw ConfigError("malformed line in " + path + ": " + line);
        e.text = value_text;
        try {
            e.value = std::stod(value_text);
        } catch (const std::exception&) {
            throw ConfigError("non-numeric entry in " + path + ": " + line);
        }
        out.push_back(std::move(e));
    }
    if (out.empty()) throw ConfigError("reference file " + path + " is empty");
    return out;
}

std::vector<Cell> compare_table(int id, const std::string& dir, real tol) {
    std::vector<Cell> cells = compute_table(id);
    std::map<std::pair<std::string, std::string>, GoldenEntry> index;
    for (auto& e : load_golden(id, dir))
        index[{e.row, e.col}] = e;
    for (auto& c : cells) {
        const auto it = index.find({c.row_key, c.col_key});
        if (it == index.end())
            throw ConfigError("reference table " + std::to_string(id) +
                              " lacks entry " + c.row_key + "/" + c.col_key);
        c.reference_text = it->second.text;
        c.reference = it->second.value;
        c.abs_diff = std::abs(c.computed - c.reference);
        c.pass = c.abs_diff <= tol;
        index.erase(it);
    }
    if (!index.empty())
        throw ConfigError("reference table " + std::to_string(id) +
                          " has entries the computation does not produce");
    return cells;
}

} // namespace edp::tables
