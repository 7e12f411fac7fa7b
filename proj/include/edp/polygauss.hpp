#pragma once

#include <vector>

#include <Eigen/Dense>

#include "edp/types.hpp"

namespace edp::polygauss {

// Dense polynomial in one variable; coeffs[i] multiplies x^i.
using Poly = Eigen::VectorXd;

// Physicists' Hermite polynomial H_n as a coefficient vector.
Poly hermite(int n);

// Evaluate p at x (Horner).
real eval(const Poly& p, real x);

// Product of two polynomials.
Poly multiply(const Poly& a, const Poly& b);

// p(s*x) expressed again as a polynomial in x.
Poly scale_argument(const Poly& p, real s);

// Integral of x^m * exp(-alpha x^2) over the whole line.  Zero for odd m;
// for even m = 2k it is (2k-1)!! sqrt(pi/alpha) / (2 alpha)^k, accumulated
// factor by factor so large m does not overflow intermediate terms.
real gaussian_moment(int m, real alpha);

// Sum addends in pairwise (cascade) order to keep cancellation error small.
real pairwise_sum(const std::vector<real>& terms);

// Exact value of  ∫ pA(sA x) pB(sB x) extra(x) exp(-alpha x^2) dx
// over the whole line, by expanding the product into monomials and summing
// their Gaussian moments pairwise.
real weighted_overlap(const Poly& pA, real sA, const Poly& pB, real sB,
                      const Poly& extra, real alpha);

} // namespace edp::polygauss
