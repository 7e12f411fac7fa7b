#include "edp/spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace edp::spectra {

real EDependence::f(real energy) const {
    switch (kind) {
        case Kind::Linear: return energy;
        case Kind::Sqrt:
            if (energy < 0.0)
                throw std::domain_error("sqrt dependence needs E >= 0");
            return std::sqrt(energy);
        case Kind::Quadratic: return energy * energy;
        case Kind::Custom: return potdsl::eval(*custom, 0.0, energy);
    }
    return 0.0; // unreachable
}

real EDependence::fprime(real energy) const {
    switch (kind) {
        case Kind::Linear: return 1.0;
        case Kind::Sqrt:
            if (energy <= 0.0)
                throw std::domain_error("sqrt dependence derivative needs E > 0");
            return 0.5 / std::sqrt(energy);
        case Kind::Quadratic: return 2.0 * energy;
        case Kind::Custom: {
            const real h = 6e-6 * std::max(std::abs(energy), 1.0);
            try {
                return (potdsl::eval(*custom, 0.0, energy + h) -
                        potdsl::eval(*custom, 0.0, energy - h)) /
                       (2.0 * h);
            } catch (const DomainError&) {
                // fall back to a one-sided difference at a domain edge
                return (potdsl::eval(*custom, 0.0, energy + h) -
                        potdsl::eval(*custom, 0.0, energy)) /
                       h;
            }
        }
    }
    return 0.0; // unreachable
}

real residual(const OscillatorModel& m, int n, real energy) {
    const real t = static_cast<real>(2 * n + 1);
    return 4.0 * energy * energy - t * t * (1.0 + m.gamma * m.dependence.f(energy));
}

real norm_bracket(const OscillatorModel& m, int n, real energy, real lambda) {
    const real t = static_cast<real>(2 * n + 1);
    return 1.0 - m.gamma * m.dependence.fprime(energy) * t / (4.0 * lambda);
}

namespace {

// Fills lambda and norm_sq from an already-determined energy.
EigenState finish_state(const OscillatorModel& m, int n, real energy) {
    EigenState s;
    s.n = n;
    s.energy = energy;
    s.model = m;
    s.lambda = 2.0 * energy / static_cast<real>(2 * n + 1);
    const real bracket = norm_bracket(m, n, energy, s.lambda);
    if (!(bracket > 0.0)) throw NonPositiveNorm(n, bracket);
    real base = std::sqrt(s.lambda) / std::sqrt(M_PI);
    for (int k = 1; k <= n; ++k) base /= 2.0 * static_cast<real>(k);
    s.norm_sq = base / bracket;
    return s;
}

// Bisect the self-consistency defect inside [lo, hi]; assumes a sign change.
real bisect_residual(const OscillatorModel& m, int n, real lo, real hi,
                     real r_lo) {
    for (int it = 0; it < 240 && hi - lo > 1e-13 * std::max(real(1), hi); ++it) {
        const real mid = 0.5 * (lo + hi);
        const real r = residual(m, n, mid);
        if (r == 0.0) return mid;
        if ((r < 0.0) == (r_lo < 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

EigenState solve_linear(real gamma, int n) {
    const real t = static_cast<real>(2 * n + 1);
    const real root = std::sqrt(1.0 + t * t * gamma * gamma / 16.0);
    const real energy = t * t * gamma / 8.0 + 0.5 * t * root;
    return finish_state({gamma, EDependence::linear()}, n, energy);
}

real linear_second_branch(real gamma, int n) {
    const real t = static_cast<real>(2 * n + 1);
    const real root = std::sqrt(1.0 + t * t * gamma * gamma / 16.0);
    return t * t * gamma / 8.0 - 0.5 * t * root;
}

EigenState solve_sqrt(real gamma, int n) {
    const OscillatorModel m{gamma, EDependence::sqrt()};
    const real t = static_cast<real>(2 * n + 1);
    real lo = 0.0;
    real r_lo = residual(m, n, lo); // = -(2n+1)^2 < 0
    real hi = t * (1.0 + std::abs(gamma)) + 1.0;
    int doublings = 0;
    while (residual(m, n, hi) <= 0.0) {
        hi *= 2.0;
        if (++doublings > 64)
            throw BracketFailure("square-root dependence level " +
                                 std::to_string(n));
    }
    return finish_state(m, n, bisect_residual(m, n, lo, hi, r_lo));
}

real sqrt_perturbative(real gamma, int n) {
    const real t = static_cast<real>(2 * n + 1);
    return 0.5 * t * (1.0 + 0.5 * gamma * std::sqrt(0.5 * t));
}

EigenState solve_quadratic(real gamma, int n) {
    const real t = static_cast<real>(2 * n + 1);
    const real disc = 4.0 - t * t * gamma;
    if (disc <= 0.0) {
        int crit = 0;
        while (4.0 - static_cast<real>((2 * crit + 1) * (2 * crit + 1)) * gamma >
               0.0)
            ++crit;
        throw ComplexEigenvalue(n, crit);
    }
    return finish_state({gamma, EDependence::quadratic()}, n,
                        t / std::sqrt(disc));
}

std::vector<EigenState> solve_custom(const OscillatorModel& m, int n,
                                     real e_lo, real e_hi) {
    if (!(e_hi > e_lo))
        throw std::invalid_argument("solve_custom: empty energy window");
    constexpr int cells = 400;
    const real h = (e_hi - e_lo) / cells;
    std::vector<EigenState> out;
    real prev_e = e_lo;
    real prev_r = residual(m, n, prev_e);
    for (int i = 1; i <= cells; ++i) {
        const real cur_e = e_lo + h * i;
        const real cur_r = residual(m, n, cur_e);
        if (prev_r == 0.0) {
            out.push_back(finish_state(m, n, prev_e));
        } else if ((prev_r < 0.0) != (cur_r < 0.0)) {
            out.push_back(
                finish_state(m, n, bisect_residual(m, n, prev_e, cur_e, prev_r)));
        }
        prev_e = cur_e;
        prev_r = cur_r;
    }
    if (prev_r == 0.0) out.push_back(finish_state(m, n, prev_e));
    return out;
}

EigenState solve(const OscillatorModel& m, int n) {
    switch (m.dependence.kind) {
        case EDependence::Kind::Linear: return solve_linear(m.gamma, n);
        case EDependence::Kind::Sqrt: return solve_sqrt(m.gamma, n);
        case EDependence::Kind::Quadratic: return solve_quadratic(m.gamma, n);
        case EDependence::Kind::Custom:
            throw std::invalid_argument(
                "custom dependence requires solve_custom with an energy window");
    }
    throw std::invalid_argument("unknown dependence kind");
}

SpectrumReport spectrum_scan(const OscillatorModel& m, int n_max) {
    SpectrumReport rep;
    rep.model = m;
    using K = EDependence::Kind;
    if (m.gamma < 0.0) {
        if (m.dependence.kind == K::Linear) rep.asymptote = -1.0 / m.gamma;
        if (m.dependence.kind == K::Sqrt)
            rep.asymptote = 1.0 / (m.gamma * m.gamma);
    }
    for (int n = 0; n <= n_max; ++n) {
        if (m.dependence.kind == K::Quadratic) {
            try {
                rep.levels.push_back({solve_quadratic(m.gamma, n), std::nullopt});
            } catch (const ComplexEigenvalue& ce) {
                rep.first_complex_level = ce.critical_level;
                break;
            }
        } else {
            LevelRecord rec{solve(m, n), std::nullopt};
            if (m.dependence.kind == K::Linear)
                rec.second_branch = linear_second_branch(m.gamma, n);
            rep.levels.push_back(std::move(rec));
        }
    }
    // Even when every requested level is real, report where realness ends.
    if (m.dependence.kind == K::Quadratic && m.gamma > 0.0 &&
        !rep.first_complex_level) {
        int crit = 0;
        while (4.0 - static_cast<real>((2 * crit + 1) * (2 * crit + 1)) * m.gamma >
               0.0)
            ++crit;
        rep.first_complex_level = crit;
    }
    return rep;
}

} // namespace edp::spectra
