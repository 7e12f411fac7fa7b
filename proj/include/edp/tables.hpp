#pragma once

#include <string>
#include <vector>

#include "edp/types.hpp"

namespace edp::tables {

// Tolerance for matching a published table entry (they carry six decimals).
constexpr real kCellTolerance = 5e-6;

struct Cell {
    int table = 0;
    std::string row_key;        // formatted coupling value
    std::string col_key;
    real computed = 0.0;
    std::string reference_text; // entry exactly as stored in the data file
    real reference = 0.0;
    real abs_diff = 0.0;
    bool pass = false;
};

// All cells of one reference table (ids 1..5), computed values only.
std::vector<Cell> compute_table(int id);

// Directory holding the reference CSVs: the explicit argument if nonempty,
// else $EDPQM_GOLDEN_DIR, else the location compiled in at build time.
std::string golden_dir(const std::string& override_dir = "");

struct GoldenEntry {
    std::string row, col, text;
    real value = 0.0;
};

std::vector<GoldenEntry> load_golden(int id, const std::string& dir);

// Computed cells merged with the stored reference values and classified at
// the given tolerance.
std::vector<Cell> compare_table(int id, const std::string& dir,
                                real tol = kCellTolerance);

} // namespace edp::tables
