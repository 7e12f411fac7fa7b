#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "doctest.h"

#include "edp/errors.hpp"
#include "edp/spectra.hpp"
#include "edp/tables.hpp"

using edp::real;
namespace tb = edp::tables;

namespace {
std::map<std::pair<std::string, std::string>, tb::Cell> by_key(
    const std::vector<tb::Cell>& cells) {
    std::map<std::pair<std::string, std::string>, tb::Cell> m;
    for (const auto& c : cells) m[{c.row_key, c.col_key}] = c;
    return m;
}
} // namespace

TEST_CASE("table 1 reproduces every cell") {
    const auto cells = tb::compare_table(1, tb::golden_dir());
    CHECK(cells.size() == 40);
    for (const auto& c : cells) {
        INFO("row ", c.row_key, " col ", c.col_key, " diff ", c.abs_diff);
        CHECK(c.pass);
    }
}

TEST_CASE("table 2 reproduces every cell") {
    const auto cells = tb::compare_table(2, tb::golden_dir());
    CHECK(cells.size() == 50);
    for (const auto& c : cells) {
        INFO("row ", c.row_key, " col ", c.col_key, " diff ", c.abs_diff);
        CHECK(c.pass);
    }
}

TEST_CASE("table 3 reproduces every cell") {
    const auto cells = tb::compare_table(3, tb::golden_dir());
    CHECK(cells.size() == 50);
    for (const auto& c : cells) {
        INFO("row ", c.row_key, " col ", c.col_key, " diff ", c.abs_diff);
        CHECK(c.pass);
    }
}

TEST_CASE("table 3 exact column equals the independent closed form") {
    const auto cells = by_key(tb::compute_table(3));
    for (const real g : {0.01, 0.05, 0.10, 0.25, 0.50, -0.01, -0.05, -0.10,
                         -0.25, -0.50}) {
        char key[16];
        std::snprintf(key, sizeof key, "%+.2f", g);
        const auto it = cells.find({key, "exact"});
        REQUIRE(it != cells.end());
        const real lambda0 = edp::spectra::solve_linear(g, 0).lambda;
        const real want = 0.5 / (1.0 - g / (4.0 * lambda0));
        CHECK(std::abs(it->second.computed - want) < 1e-9);
    }
}

TEST_CASE("table 4: quadratic column exact, quartic column off by two") {
    const auto cells = tb::compare_table(4, tb::golden_dir());
    CHECK(cells.size() == 20);
    int passed = 0;
    for (const auto& c : cells) {
        INFO("row ", c.row_key, " col ", c.col_key, " diff ", c.abs_diff);
        const bool quartic = c.col_key.rfind("psi4", 0) == 0;
        if (!quartic) {
            CHECK(c.pass); // every quadratic-correction cell matches
        } else if (c.row_key == "0.01") {
            CHECK(c.pass); // printed as 0.000000; the tiny value fits
        } else {
            CHECK_FALSE(c.pass);
            // the printed number is half the computed coefficient (to the
            // table's own precision at small coupling)
            if (c.row_key == "0.05" || c.row_key == "0.10") {
                CHECK(std::abs(c.computed / 2.0 - c.reference) < 1e-6);
            }
        }
        if (c.pass) ++passed;
    }
    CHECK(passed == 12);
}

TEST_CASE("table 5: exact column and leading positive partial sums only") {
    const auto cells = tb::compare_table(5, tb::golden_dir());
    CHECK(cells.size() == 40);

    // the sums saturate after n=3, and for small positive coupling the
    // published cumulative value happens to sit on the saturation point, so
    // those two nmax5 cells also agree
    const std::set<std::pair<std::string, std::string>> expected_pass = {
        {"+0.05", "exact"}, {"+0.10", "exact"}, {"+0.25", "exact"},
        {"+0.50", "exact"}, {"-0.05", "exact"}, {"-0.10", "exact"},
        {"-0.25", "exact"}, {"-0.50", "exact"}, {"+0.05", "nmax1"},
        {"+0.10", "nmax1"}, {"+0.25", "nmax1"}, {"+0.50", "nmax1"},
        {"+0.05", "nmax5"}, {"+0.10", "nmax5"},
    };
    int passed = 0;
    for (const auto& c : cells) {
        INFO("row ", c.row_key, " col ", c.col_key, " diff ", c.abs_diff);
        const bool want = expected_pass.count({c.row_key, c.col_key}) > 0;
        CHECK(c.pass == want);
        if (c.pass) ++passed;
    }
    CHECK(passed == 14);
}

TEST_CASE("golden directory resolution") {
    CHECK(tb::golden_dir("/explicit/override") == "/explicit/override");
    // the built-in default points at a directory holding table1.csv
    const auto dir = tb::golden_dir();
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / "table1.csv"));
}

TEST_CASE("loader failure modes") {
    namespace fs = std::filesystem;
    CHECK_THROWS_AS(tb::load_golden(1, "/no/such/directory"), edp::ConfigError);

    const fs::path dir =
        fs::temp_directory_path() / "edpqm_tables_test";
    fs::create_directories(dir);

    {
        std::ofstream out(dir / "table1.csv");
        out << "row_key,col_key,value\n";
        out << "+0.01,exact,not_a_number\n";
    }
    CHECK_THROWS_AS(tb::load_golden(1, dir.string()), edp::ConfigError);

    {
        std::ofstream out(dir / "table1.csv");
        out << "row_key,col_key,value\n";
        out << "+0.01,exact,0.497544\n";
    }
    // parses, but compare_table insists on full coverage
    CHECK(tb::load_golden(1, dir.string()).size() == 1);
    CHECK_THROWS_AS(tb::compare_table(1, dir.string()), edp::ConfigError);

    {
        std::ofstream out(dir / "table1.csv");
        out << "row_key,col_key,value\n";
    }
    CHECK_THROWS_AS(tb::load_golden(1, dir.string()), edp::ConfigError);

    fs::remove_all(dir);
}
