#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "edp/spectra.hpp"
#include "edp/types.hpp"

namespace edp::observables {

// Coefficient w of the quadratic correction in the product weight
// [1 - w x^2] between the bra level and the ket level.  The diagonal case
// uses the derivative of the energy dependence, off-diagonal pairs its
// difference quotient between the two energies.
struct WeightKernel {
    int bra = 0;
    int ket = 0;
    real w = 0.0;
};

WeightKernel pair_weight(const spectra::EigenState& bra,
                         const spectra::EigenState& ket);

// Squared norm constant of a level; identical to the value carried by the
// state, recomputed from scratch (and re-checked for positivity).
real norm_constant_sq(const spectra::EigenState& s);

struct MatrixElement {
    int bra = 0;
    int ket = 0;
    int power = 0;
    real value = 0.0;
};

// <bra| x^power |ket> under the modified product, exact via Gaussian
// moments.  Both states must belong to the same model.
MatrixElement modified_inner(const spectra::EigenState& bra,
                             const spectra::EigenState& ket, int power);

// Diagonal expectation value <x^k> of a level (zero for odd k).
real moment(const spectra::EigenState& s, int k);

// Closed-form <x^2> for the linear and square-root dependences; used to
// cross-check the quadrature route.
real second_moment_closed_form(const spectra::EigenState& s);

// Leading factor controlling the sign of <x^k> at large k:
//   linear:       1 - gamma (k+1) / (4 lambda)
//   square root:  1 - gamma (k+1) / (4 lambda sqrt(E))
real moment_leading_factor(const spectra::EigenState& s, int k);

// Smallest even order whose leading factor is negative.  Throws
// NoCriticalOrder when the factor stays positive for every order.
int critical_moment_order(const spectra::EigenState& s);

// Partial sums of  sum_n |<n| x^power |j>|^2  up to n = n_max, one entry
// per n, together with the directly computed moment <x^(2 power)>_j the
// completeness relation would equate them to.
struct ClosureReport {
    int j = 0;
    int power = 0;
    std::vector<std::pair<int, real>> partial_sums; // (n, sum through n)
    real direct_moment = 0.0;
};

ClosureReport closure_sum(const spectra::OscillatorModel& m, int j, int power,
                          int n_max);

// Overlap deficit  ∫ psi_j psi_n [phi_nn - phi_nj] x^0 dx  measuring how far
// the state pair is from supporting a completeness relation.
real closure_correction(const spectra::OscillatorModel& m, int n, int j);

// Energy-weighted dipole strength  sum_n (E_n - E_0) |<n|x|0>|^2  with its
// closed-form value for the linear dependence.
struct SumRuleReport {
    std::vector<std::pair<int, real>> partial_sums;
    std::optional<real> closed_form;
};

SumRuleReport dipole_sum_rule(const spectra::OscillatorModel& m, int n_max);

// Ground-state average of the rational operator fixing the dipole sum rule,
// evaluated by direct quadrature of the rational integrand.  When the
// operator has a pole inside the integration support the quadrature is
// abandoned: the closed form is returned with used_fallback set (the strict
// variant below throws instead).  Linear dependence only.
struct CommutatorAverage {
    real value = 0.0;
    bool used_fallback = false;
};

real double_commutator_quadrature(const spectra::OscillatorModel& m);
CommutatorAverage double_commutator_average(const spectra::OscillatorModel& m);

} // namespace edp::observables
