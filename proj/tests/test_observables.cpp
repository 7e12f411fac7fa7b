#include <cmath>

#include "doctest.h"

#include "edp/errors.hpp"
#include "edp/observables.hpp"
#include "edp/spectra.hpp"

using edp::real;
namespace sp = edp::spectra;
namespace ob = edp::observables;

namespace {
sp::OscillatorModel lin(real g) { return {g, sp::EDependence::linear()}; }
sp::OscillatorModel sqr(real g) { return {g, sp::EDependence::sqrt()}; }
} // namespace

TEST_CASE("pair weights") {
    // linear dependence: constant gamma/2 for every pair
    const auto a = sp::solve_linear(0.2, 0);
    const auto b = sp::solve_linear(0.2, 3);
    CHECK(ob::pair_weight(a, a).w == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(ob::pair_weight(a, b).w == doctest::Approx(0.1).epsilon(1e-14));

    // sqrt dependence: gamma/(4 sqrt(E)) diagonal,
    // gamma/(2 (sqrt(Ej)+sqrt(Ek))) off the diagonal
    const auto c = sp::solve_sqrt(0.1, 0);
    const auto d = sp::solve_sqrt(0.1, 2);
    CHECK(ob::pair_weight(c, c).w ==
          doctest::Approx(0.1 / (4.0 * std::sqrt(c.energy))).epsilon(1e-13));
    CHECK(ob::pair_weight(c, d).w ==
          doctest::Approx(0.1 / (2.0 * (std::sqrt(c.energy) +
                                        std::sqrt(d.energy))))
              .epsilon(1e-13));
}

TEST_CASE("norm constants recompute identically") {
    for (const real g : {-0.5, -0.1, 0.1, 0.5}) {
        for (int n = 0; n <= 6; ++n) {
            const auto st = sp::solve_linear(g, n);
            CHECK(ob::norm_constant_sq(st) ==
                  doctest::Approx(st.norm_sq).epsilon(1e-14));
        }
    }
}

TEST_CASE("modified product orthonormality, linear dependence") {
    const real tol = 1e-10;
    for (int j = 0; j <= 8; ++j) {
        const auto bra = sp::solve_linear(-0.1, j);
        for (int k = 0; k <= 8; ++k) {
            const auto ket = sp::solve_linear(-0.1, k);
            const real got = ob::modified_inner(bra, ket, 0).value;
            const real want = (j == k) ? 1.0 : 0.0;
            CHECK(std::abs(got - want) < tol);
        }
    }
}

TEST_CASE("modified product orthonormality, sqrt dependence") {
    const real tol = 1e-10;
    for (int j = 0; j <= 8; ++j) {
        const auto bra = sp::solve_sqrt(0.1, j);
        for (int k = 0; k <= 8; ++k) {
            const auto ket = sp::solve_sqrt(0.1, k);
            const real got = ob::modified_inner(bra, ket, 0).value;
            const real want = (j == k) ? 1.0 : 0.0;
            CHECK(std::abs(got - want) < tol);
        }
    }
}

TEST_CASE("second moments") {
    // frozen against an independent high-precision evaluation
    CHECK(ob::moment(sp::solve_linear(0.1, 0), 2) ==
          doctest::Approx(0.463281030372569).epsilon(1e-13));
    CHECK(ob::moment(sp::solve_linear(0.1, 0), 4) ==
          doctest::Approx(0.642105488883023).epsilon(1e-13));
    CHECK(ob::moment(sp::solve_sqrt(0.25, 0), 2) ==
          doctest::Approx(0.422212434524071).epsilon(1e-13));

    // odd moments vanish by parity
    CHECK(ob::moment(sp::solve_linear(0.1, 1), 3) == 0.0);
}

TEST_CASE("closed-form second moments match the exact-integration route") {
    for (const real g : {-0.25, -0.05, 0.05, 0.25}) {
        for (int n = 0; n <= 5; ++n) {
            const auto stl = sp::solve_linear(g, n);
            CHECK(ob::second_moment_closed_form(stl) ==
                  doctest::Approx(ob::moment(stl, 2)).epsilon(1e-12));
            const auto sts = sp::solve_sqrt(g, n);
            CHECK(ob::second_moment_closed_form(sts) ==
                  doctest::Approx(ob::moment(sts, 2)).epsilon(1e-12));
        }
    }
    const sp::OscillatorModel q{-0.1, sp::EDependence::quadratic()};
    CHECK_THROWS_AS(ob::second_moment_closed_form(sp::solve(q, 0)),
                    std::invalid_argument);
}

TEST_CASE("squared dipole matrix element") {
    const auto bra = sp::solve_linear(0.1, 1);
    const auto ket = sp::solve_linear(0.1, 0);
    const real v = ob::modified_inner(bra, ket, 1).value;
    CHECK(v * v == doctest::Approx(0.4628941535710534).epsilon(1e-12));
}

TEST_CASE("moment sign diagnostics") {
    const auto st = sp::solve_linear(0.1, 0);
    CHECK(ob::moment_leading_factor(st, 2) ==
          doctest::Approx(1.0 - 0.1 * 3.0 / (4.0 * st.lambda)).epsilon(1e-13));
    CHECK(ob::critical_moment_order(st) == 42);
    CHECK_THROWS_AS(ob::critical_moment_order(sp::solve_linear(-0.1, 0)),
                    edp::NoCriticalOrder);
}

TEST_CASE("closure partial sums") {
    // frozen against an independent high-precision evaluation
    {
        const auto rep = ob::closure_sum(lin(0.25), 0, 1, 3);
        REQUIRE(rep.partial_sums.size() == 4);
        CHECK(rep.partial_sums[3].second ==
              doctest::Approx(0.411011828074).epsilon(1e-11));
    }
    {
        const auto rep = ob::closure_sum(lin(-0.10), 0, 2, 6);
        REQUIRE(rep.partial_sums.size() == 7);
        CHECK(rep.partial_sums[6].second ==
              doctest::Approx(0.867247770021).epsilon(1e-11));
        CHECK(rep.direct_moment ==
              doctest::Approx(ob::moment(sp::solve_linear(-0.10, 0), 4))
                  .epsilon(1e-13));
    }
    {
        const auto rep = ob::closure_sum(sqr(0.50), 0, 1, 5);
        REQUIRE(rep.partial_sums.size() == 6);
        CHECK(rep.partial_sums[1].second ==
              doctest::Approx(0.375327547694).epsilon(1e-11));
        CHECK(rep.partial_sums[3].second ==
              doctest::Approx(0.375934712880).epsilon(1e-11));
        CHECK(rep.partial_sums[5].second ==
              doctest::Approx(0.375943627253).epsilon(1e-11));
    }
}

TEST_CASE("closure corrections") {
    // frozen against an independent high-precision evaluation
    CHECK(ob::closure_correction(sqr(0.1), 2, 0) ==
          doctest::Approx(-0.004210799718).epsilon(1e-9));
    CHECK(ob::closure_correction(sqr(-0.1), 2, 0) ==
          doctest::Approx(0.004300896024).epsilon(1e-9));
    CHECK(ob::closure_correction(sqr(0.1), 4, 0) ==
          doctest::Approx(-0.000232599954).epsilon(1e-8));
    CHECK(ob::closure_correction(sqr(-0.1), 4, 0) ==
          doctest::Approx(-0.000277066128).epsilon(1e-8));
}

TEST_CASE("dipole strength sums") {
    {
        const auto rep = ob::dipole_sum_rule(lin(0.05), 7);
        REQUIRE(!rep.partial_sums.empty());
        CHECK(rep.partial_sums.back().second ==
              doctest::Approx(0.506249508474).epsilon(1e-11));
        REQUIRE(rep.closed_form.has_value());
        CHECK(*rep.closed_form ==
              doctest::Approx(0.506249511776).epsilon(1e-11));
    }
    {
        const auto rep = ob::dipole_sum_rule(lin(-0.25), 5);
        CHECK(rep.partial_sums.back().second ==
              doctest::Approx(0.468275854151).epsilon(1e-11));
    }
    {
        const auto rep = ob::dipole_sum_rule(lin(0.50), 7);
        CHECK(rep.partial_sums.back().second ==
              doctest::Approx(0.551709300150).epsilon(1e-11));
        // strong coupling: the partial sums visibly miss the closed form
        CHECK(std::abs(rep.partial_sums.back().second - *rep.closed_form) >
              0.005);
    }
    // sqrt dependence has no closed form to report
    CHECK_FALSE(ob::dipole_sum_rule(sqr(0.1), 3).closed_form.has_value());
}

TEST_CASE("rational operator average by quadrature") {
    // negative coupling: no pole; the quadrature reproduces the closed form
    // [1 - gamma/(4 lambda_0)]^{-1}, twice the sum-rule value
    const auto st = sp::solve_linear(-0.1, 0);
    const real want = 1.0 / (1.0 - (-0.1) / (4.0 * st.lambda));
    const real got = ob::double_commutator_quadrature(lin(-0.1));
    CHECK(got == doctest::Approx(want).epsilon(1e-9));

    const auto rep = ob::dipole_sum_rule(lin(-0.1), 1);
    REQUIRE(rep.closed_form.has_value());
    CHECK(got == doctest::Approx(2.0 * *rep.closed_form).epsilon(1e-9));

    const auto avg = ob::double_commutator_average(lin(-0.1));
    CHECK_FALSE(avg.used_fallback);
    CHECK(avg.value == doctest::Approx(got).epsilon(1e-12));

    // positive coupling: the operator has a pole inside the support
    CHECK_THROWS_AS(ob::double_commutator_quadrature(lin(0.1)),
                    edp::PathologicalOperator);
    const auto fb = ob::double_commutator_average(lin(0.1));
    CHECK(fb.used_fallback);
    const auto rep2 = ob::dipole_sum_rule(lin(0.1), 1);
    CHECK(fb.value == doctest::Approx(2.0 * *rep2.closed_form).epsilon(1e-12));
}
