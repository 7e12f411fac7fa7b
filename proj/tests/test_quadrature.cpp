#include <cmath>
#include <vector>

#include "doctest.h"

#include "edp/quadrature.hpp"

using edp::real;
namespace q = edp::quadrature;

TEST_CASE("adaptive simpson on smooth integrands") {
    CHECK(q::integrate([](real x) { return x * x; }, 0.0, 3.0) ==
          doctest::Approx(9.0).epsilon(1e-12));
    CHECK(q::integrate([](real x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    const real kPi = 3.14159265358979323846;
    CHECK(q::integrate([](real x) { return std::exp(-x * x); }, -12.0, 12.0) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("adaptive simpson resolves a narrow feature") {
    // sharp gaussian away from the interval midpoint
    const real got = q::integrate(
        [](real x) { return std::exp(-400.0 * (x - 0.7) * (x - 0.7)); }, 0.0,
        1.0, 1e-13);
    const real want = std::sqrt(3.14159265358979323846 / 400.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("trapezoid rule on sampled data") {
    std::vector<real> ys;
    const int n = 2001;
    const real a = 0.0, b = 1.0, dx = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const real x = a + i * dx;
        ys.push_back(x * x);
    }
    CHECK(q::trapezoid(ys, dx) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}
