#include "edp/equivalence.hpp"

#include <cmath>
#include <stdexcept>

#include "edp/errors.hpp"
#include "edp/polygauss.hpp"
#include "edp/quadrature.hpp"
#include "edp/spectra.hpp"

namespace edp::equivalence {

namespace {

using generalsolver::GridFunction;

void require_valid(const LinearEModel& m) {
    if (!(m.a_coeff > 0.0) || !(m.k_coeff > 0.0))
        throw std::invalid_argument("model needs positive A and K");
}

// Squared norm constant of chi_n under the plain product.
real chi_norm_sq(const LinearEModel& m, int n) {
    const real lam = qm2_lambda(m, n);
    polygauss::Poly extra = polygauss::Poly::Zero(3);
    extra[0] = 1.0;
    extra[2] = m.k_coeff;
    const real ovl = polygauss::weighted_overlap(
        polygauss::hermite(n), std::sqrt(lam), polygauss::hermite(n),
        std::sqrt(lam), extra, lam);
    return 1.0 / ovl;
}

GridFunction make_grid(real halfwidth, int points) {
    if (points < 3) throw std::invalid_argument("grid needs at least 3 points");
    GridFunction f;
    f.x0 = -halfwidth;
    f.dx = 2.0 * halfwidth / static_cast<real>(points - 1);
    f.values.resize(points);
    return f;
}

// Fourth-order first and second derivative stencils with zero padding.
real d1(const std::vector<real>& v, std::ptrdiff_t i, real dx) {
    auto at = [&](std::ptrdiff_t j) {
        return (j < 0 || j >= static_cast<std::ptrdiff_t>(v.size())) ? 0.0
                                                                     : v[j];
    };
    return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) /
           (12.0 * dx);
}

real d2(const std::vector<real>& v, std::ptrdiff_t i, real dx) {
    auto at = [&](std::ptrdiff_t j) {
        return (j < 0 || j >= static_cast<std::ptrdiff_t>(v.size())) ? 0.0
                                                                     : v[j];
    };
    return (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) -
            at(i + 2)) /
           (12.0 * dx * dx);
}

} // namespace

real supremum(const LinearEModel& m) {
    require_valid(m);
    return m.a_coeff / m.k_coeff;
}

real qm2_energy(const LinearEModel& m, int n) {
    require_valid(m);
    const real t = static_cast<real>(2 * n + 1);
    return 0.25 * t *
           (std::sqrt(8.0 * m.a_coeff + t * t * m.k_coeff * m.k_coeff) -
            t * m.k_coeff);
}

real qm2_lambda(const LinearEModel& m, int n) {
    const real arg = 2.0 * (m.a_coeff - m.k_coeff * qm2_energy(m, n));
    // always positive: energies stay below A / K
    return std::sqrt(arg);
}

KappaReport check_kappa_positive(const potdsl::Expr& v1, real x_max) {
    if (!(x_max > 0.0))
        throw std::invalid_argument("positivity scan needs x_max > 0");
    constexpr int samples = 4096;
    const real h = x_max / samples;
    auto kappa = [&](real x) { return 1.0 - potdsl::eval(v1, x, 0.0); };
    real prev_x = 0.0;
    real prev_k = kappa(0.0);
    if (prev_k <= 0.0) return {false, 0.0};
    for (int i = 1; i <= samples; ++i) {
        const real x = h * i;
        const real k = kappa(x);
        if (k <= 0.0) {
            // bisect the crossing to 1e-6
            real lo = prev_x, hi = x;
            while (hi - lo > 1e-7) {
                const real mid = 0.5 * (lo + hi);
                if (kappa(mid) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return {false, 0.5 * (lo + hi)};
        }
        prev_x = x;
        prev_k = k;
    }
    return {true, std::nullopt};
}

GridFunction qm2_wavefunction(const LinearEModel& m, int n, real halfwidth,
                              int points) {
    require_valid(m);
    const real lam = qm2_lambda(m, n);
    const real c = std::sqrt(chi_norm_sq(m, n));
    const polygauss::Poly h = polygauss::hermite(n);
    GridFunction f = make_grid(halfwidth, points);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const real x = f.x(i);
        f.values[i] = c * std::sqrt(1.0 + m.k_coeff * x * x) *
                      polygauss::eval(h, std::sqrt(lam) * x) *
                      std::exp(-0.5 * lam * x * x);
    }
    return f;
}

GridFunction qm1_wavefunction(const LinearEModel& m, int n, real halfwidth,
                              int points) {
    require_valid(m);
    const real lam = qm2_lambda(m, n);
    const real c = std::sqrt(chi_norm_sq(m, n));
    const polygauss::Poly h = polygauss::hermite(n);
    GridFunction f = make_grid(halfwidth, points);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const real x = f.x(i);
        f.values[i] = c * polygauss::eval(h, std::sqrt(lam) * x) *
                      std::exp(-0.5 * lam * x * x);
    }
    return f;
}

GridFunction apply_h_tilde(const LinearEModel& m, const GridFunction& chi) {
    require_valid(m);
    const auto n_pts = static_cast<std::ptrdiff_t>(chi.size());
    // first multiplication by the transform factor
    std::vector<real> u(chi.values);
    for (std::ptrdiff_t i = 0; i < n_pts; ++i) {
        const real x = chi.x(i);
        u[i] /= std::sqrt(1.0 + m.k_coeff * x * x);
    }
    // plain quadratic-well Hamiltonian
    std::vector<real> hu(u.size());
    for (std::ptrdiff_t i = 0; i < n_pts; ++i) {
        const real x = chi.x(i);
        hu[i] = -0.5 * d2(u, i, chi.dx) + m.a_coeff * x * x * u[i];
    }
    // second multiplication
    GridFunction out = chi;
    for (std::ptrdiff_t i = 0; i < n_pts; ++i) {
        const real x = chi.x(i);
        out.values[i] = hu[i] / std::sqrt(1.0 + m.k_coeff * x * x);
    }
    return out;
}

std::vector<std::complex<real>> apply_momentum_qm1(const LinearEModel& m,
                                                   const GridFunction& psi) {
    require_valid(m);
    const auto n_pts = static_cast<std::ptrdiff_t>(psi.size());
    std::vector<real> t(psi.values);
    for (std::ptrdiff_t i = 0; i < n_pts; ++i) {
        const real x = psi.x(i);
        t[i] *= std::sqrt(1.0 + m.k_coeff * x * x); // inverse transform first
    }
    std::vector<std::complex<real>> out(psi.size());
    const std::complex<real> mi(0.0, -1.0);
    for (std::ptrdiff_t i = 0; i < n_pts; ++i) {
        const real x = psi.x(i);
        out[i] = mi * d1(t, i, psi.dx) / std::sqrt(1.0 + m.k_coeff * x * x);
    }
    return out;
}

std::vector<std::complex<real>> apply_momentum_printed(
    const LinearEModel& m, const GridFunction& psi) {
    require_valid(m);
    const auto n_pts = static_cast<std::ptrdiff_t>(psi.size());
    std::vector<std::complex<real>> out(psi.size());
    const std::complex<real> mi(0.0, -1.0);
    const std::complex<real> pi_half(0.0, 0.5);
    for (std::ptrdiff_t i = 0; i < n_pts; ++i) {
        const real x = psi.x(i);
        // weight derivative of -K x^2 is -2 K x; the displayed correction
        // divides by the square root of the factor instead of the factor
        const real vprime = -2.0 * m.k_coeff * x;
        out[i] = mi * d1(psi.values, i, psi.dx) +
                 pi_half * vprime / std::sqrt(1.0 + m.k_coeff * x * x) *
                     psi.values[i];
    }
    return out;
}

real hamiltonian_residual_max(const LinearEModel& m, int n, real dx) {
    require_valid(m);
    const real lam = qm2_lambda(m, n);
    const real halfwidth = 12.0 / std::sqrt(lam);
    const int points = 2 * static_cast<int>(std::ceil(halfwidth / dx)) + 1;
    const GridFunction chi =
        qm2_wavefunction(m, n, dx * static_cast<real>(points - 1) / 2.0, points);
    const GridFunction hchi = apply_h_tilde(m, chi);
    const real e = qm2_energy(m, n);
    real worst = 0.0;
    for (std::size_t i = 0; i < chi.size(); ++i)
        worst = std::max(worst, std::abs(hchi.values[i] - e * chi.values[i]));
    return worst;
}

ProductPair pair_product(const LinearEModel& m, int j, int k, real dx) {
    require_valid(m);
    const real lam_j = qm2_lambda(m, j), lam_k = qm2_lambda(m, k);
    const real halfwidth = 12.0 / std::sqrt(std::min(lam_j, lam_k));
    const int points = 2 * static_cast<int>(std::ceil(halfwidth / dx)) + 1;
    const real half = dx * static_cast<real>(points - 1) / 2.0;

    const GridFunction pj = qm1_wavefunction(m, j, half, points);
    const GridFunction pk = qm1_wavefunction(m, k, half, points);
    std::vector<real> integrand(pj.size());
    for (std::size_t i = 0; i < pj.size(); ++i) {
        const real x = pj.x(i);
        integrand[i] =
            pj.values[i] * pk.values[i] * (1.0 + m.k_coeff * x * x);
    }

    polygauss::Poly extra = polygauss::Poly::Zero(3);
    extra[0] = 1.0;
    extra[2] = m.k_coeff;
    const real exact =
        std::sqrt(chi_norm_sq(m, j) * chi_norm_sq(m, k)) *
        polygauss::weighted_overlap(polygauss::hermite(j), std::sqrt(lam_j),
                                    polygauss::hermite(k), std::sqrt(lam_k),
                                    extra, 0.5 * (lam_j + lam_k));

    return {quadrature::trapezoid(integrand, pj.dx), exact};
}

CrossCheckReport cross_check_toy(real gamma, int n_max, bool literal_k) {
    if (gamma >= 0.0) {
        // the transform factor 1 + (|gamma|/2) x^2 must stay positive; for
        // positive gamma it crosses zero and the construction breaks down
        throw KappaNonPositive(std::sqrt(2.0 / gamma));
    }
    CrossCheckReport rep;
    rep.a_coeff = 0.5;
    rep.k_coeff = literal_k ? std::abs(gamma) : 0.5 * std::abs(gamma);
    rep.literal_k = literal_k;
    const LinearEModel m{rep.a_coeff, rep.k_coeff};
    for (int n = 0; n <= n_max; ++n) {
        CrossCheckRow row;
        row.n = n;
        row.transformed = qm2_energy(m, n);
        row.toy = spectra::solve_linear(gamma, n).energy;
        row.diff = std::abs(row.transformed - row.toy);
        rep.max_diff = std::max(rep.max_diff, row.diff);
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace edp::equivalence
