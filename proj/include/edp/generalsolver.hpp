#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "edp/potdsl.hpp"
#include "edp/types.hpp"

namespace edp::generalsolver {

// Values sampled on a uniform grid x0, x0+dx, ...
struct GridFunction {
    real x0 = 0.0;
    real dx = 0.0;
    std::vector<real> values;
    std::size_t size() const { return values.size(); }
    real x(std::size_t i) const { return x0 + dx * static_cast<real>(i); }
};

// Confining problem with an energy-coupled shape:
//   U(x, z) = v0(x) + g(z) * v1(x)
// where z is the frozen energy parameter.  The box is [-L, L] with
// grid_points nodes; L = 0 asks for an automatic box sized from the
// curvature of the frozen well at the origin.
struct GeneralPotential {
    potdsl::ExprPtr v0;
    potdsl::ExprPtr v1;
    potdsl::ExprPtr g;
    real domain_halfwidth = 0.0;
    int grid_points = 2001; // at least 1000
};

real frozen_potential(const GeneralPotential& p, real x, real z);

// Box half width used for the given frozen parameter (the explicit one, or
// the curvature-based automatic choice).
real box_halfwidth(const GeneralPotential& p, real z);

struct EigenResult {
    real energy = 0.0;
    int nodes = 0;
    GridFunction psi; // normalized, positive left tail
};

// n-th level (n interior nodes) of the frozen potential at parameter z.
// Two-sided Numerov shooting: node-count bisection isolates the level,
// then bisection on the matching defect at the outer turning point refines
// it; if the defect does not change sign across the bracket the node-count
// bisection simply continues to full depth.
EigenResult eigen_of_fixed_z(const GeneralPotential& p, real z, int n);

// A self-consistent point E_n(z) = z found inside the scan window.
struct FixedPointRoot {
    int n = 0;
    int index = 0;                 // position within the returned list
    real z = 0.0;                  // the self-consistent energy
    std::pair<real, real> bracket; // final enclosing interval
    GridFunction psi;
};

// Part of the scan window where the frozen solve failed; recorded rather
// than aborting the whole scan.
struct ScanGap {
    real z_lo = 0.0;
    real z_hi = 0.0;
    std::string reason;
};

struct FixedPointReport {
    std::vector<FixedPointRoot> roots;
    std::vector<ScanGap> gaps;
};

// Scan F(z) = E_n(z) - z on a lattice over [z_lo, z_hi] and bisect every
// sign change.  The window is an explicit input: the caller decides where
// self-consistent energies are to be searched.
FixedPointReport find_fixed_points(const GeneralPotential& p, int n,
                                   real z_lo, real z_hi, int cells = 200);

struct GramReport {
    Eigen::MatrixXd gram;
    real smallest_singular_value = 0.0;
    bool independent = false;
};

// Pairwise overlap matrix of the root wavefunctions (resampled onto a
// common grid) and its smallest singular value; flags near-dependence.
GramReport independence_check(const std::vector<FixedPointRoot>& roots);

} // namespace edp::generalsolver
