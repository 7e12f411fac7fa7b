#pragma once

#include <functional>
#include <vector>

#include "edp/types.hpp"

namespace edp::quadrature {

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
// Subdivision depth is capped; the cap is generous enough for the smooth
// integrands used here.
real integrate(const std::function<real(real)>& f, real a, real b,
               real tol = 1e-12);

// Trapezoid rule over uniformly spaced samples with spacing dx.
real trapezoid(const std::vector<real>& values, real dx);

} // namespace edp::quadrature
