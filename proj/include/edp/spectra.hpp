#pragma once

#include <optional>
#include <vector>

#include "edp/errors.hpp"
#include "edp/potdsl.hpp"
#include "edp/types.hpp"

namespace edp::spectra {

// How the stiffness of the quadratic well depends on the level energy E.
// The well is (1/2)(1 + gamma * f(E)) x^2; lambda^2 = 1 + gamma * f(E).
struct EDependence {
    enum class Kind { Linear, Sqrt, Quadratic, Custom };
    Kind kind = Kind::Linear;
    potdsl::ExprPtr custom; // f(E) for Kind::Custom; expression in E

    static EDependence linear() { return {Kind::Linear, nullptr}; }
    static EDependence sqrt() { return {Kind::Sqrt, nullptr}; }
    static EDependence quadratic() { return {Kind::Quadratic, nullptr}; }
    static EDependence custom_f(potdsl::ExprPtr f) {
        return {Kind::Custom, std::move(f)};
    }

    real f(real energy) const;
    // df/dE; analytic for the builtin kinds, central difference for Custom.
    real fprime(real energy) const;
};

struct OscillatorModel {
    real gamma = 0.0;
    EDependence dependence;
};

// One self-consistent level.  Invariants: lambda = 2 * energy / (2n + 1)
// and lambda^2 = 1 + gamma * f(energy).
struct EigenState {
    int n = 0;
    real energy = 0.0;
    real lambda = 0.0;
    real norm_sq = 0.0; // C_n^2 of the normalized wavefunction
    OscillatorModel model;
};

// Self-consistency defect 4 E^2 - (2n+1)^2 (1 + gamma f(E)); zero at a level.
real residual(const OscillatorModel& m, int n, real energy);

// Normalization bracket 1 - gamma f'(E) (2n+1) / (4 lambda).  The squared
// norm constant is (sqrt(lambda)/sqrt(pi)) / (2^n n!) divided by this.
real norm_bracket(const OscillatorModel& m, int n, real energy, real lambda);

// Closed-form level of the linearly energy-dependent well (upper root of
// its quadratic).  Throws NonPositiveNorm if normalization fails.
EigenState solve_linear(real gamma, int n);

// The discarded lower root of the same quadratic, for reporting only.
real linear_second_branch(real gamma, int n);

// Level of the square-root dependence, by bracketed bisection of the
// self-consistency defect to 1e-12.
EigenState solve_sqrt(real gamma, int n);

// First-order estimate of the square-root level, for comparison output.
real sqrt_perturbative(real gamma, int n);

// Closed-form level of the quadratic dependence.  Throws ComplexEigenvalue
// (carrying the first complex level) when 4 - (2n+1)^2 gamma <= 0.
EigenState solve_quadratic(real gamma, int n);

// All self-consistent levels of index n for a custom dependence whose
// energies lie in [e_lo, e_hi], found by a sign scan plus bisection.
std::vector<EigenState> solve_custom(const OscillatorModel& m, int n,
                                     real e_lo, real e_hi);

// Dispatch on the builtin kinds.  Custom models need solve_custom.
EigenState solve(const OscillatorModel& m, int n);

struct LevelRecord {
    EigenState state;
    std::optional<real> second_branch; // linear dependence only
};

struct SpectrumReport {
    OscillatorModel model;
    std::vector<LevelRecord> levels;
    // Large-n limit of the energies when the family has one.
    std::optional<real> asymptote;
    // First level whose closed-form energy is complex, when that happens
    // at any n (quadratic dependence with positive gamma).
    std::optional<int> first_complex_level;
};

// Levels 0..n_max plus family diagnostics.  For the quadratic dependence
// the level list stops below the first complex level instead of throwing.
SpectrumReport spectrum_scan(const OscillatorModel& m, int n_max);

} // namespace edp::spectra
