#include "edp/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "edp/polygauss.hpp"
#include "edp/quadrature.hpp"

namespace edp::observables {

namespace {

using spectra::EDependence;
using spectra::EigenState;
using spectra::OscillatorModel;

void require_same_model(const EigenState& a, const EigenState& b) {
    if (a.model.gamma != b.model.gamma ||
        a.model.dependence.kind != b.model.dependence.kind)
        throw std::invalid_argument(
            "matrix elements need two levels of the same model");
}

} // namespace

WeightKernel pair_weight(const EigenState& bra, const EigenState& ket) {
    require_same_model(bra, ket);
    const real g = bra.model.gamma;
    const real ej = bra.energy, ek = ket.energy;
    real w = 0.0;
    switch (bra.model.dependence.kind) {
        case EDependence::Kind::Linear:
            w = 0.5 * g;
            break;
        case EDependence::Kind::Sqrt:
            w = (bra.n == ket.n) ? g / (4.0 * std::sqrt(ej))
                                 : g / (2.0 * (std::sqrt(ej) + std::sqrt(ek)));
            break;
        case EDependence::Kind::Quadratic:
            w = (bra.n == ket.n) ? g * ej : 0.5 * g * (ej + ek);
            break;
        case EDependence::Kind::Custom: {
            const auto& dep = bra.model.dependence;
            if (bra.n == ket.n || std::abs(ej - ek) < 1e-9) {
                w = 0.5 * g * dep.fprime(0.5 * (ej + ek));
            } else {
                w = 0.5 * g * (dep.f(ej) - dep.f(ek)) / (ej - ek);
            }
            break;
        }
    }
    return {bra.n, ket.n, w};
}

real norm_constant_sq(const EigenState& s) {
    const real bracket =
        spectra::norm_bracket(s.model, s.n, s.energy, s.lambda);
    if (!(bracket > 0.0)) throw NonPositiveNorm(s.n, bracket);
    real base = std::sqrt(s.lambda) / std::sqrt(M_PI);
    for (int k = 1; k <= s.n; ++k) base /= 2.0 * static_cast<real>(k);
    return base / bracket;
}

MatrixElement modified_inner(const EigenState& bra, const EigenState& ket,
                             int power) {
    require_same_model(bra, ket);
    if (power < 0) throw std::invalid_argument("negative operator power");
    const real w = pair_weight(bra, ket).w;
    polygauss::Poly extra = polygauss::Poly::Zero(power + 3);
    extra[power] = 1.0;
    extra[power + 2] = -w;
    const real alpha = 0.5 * (bra.lambda + ket.lambda);
    const real raw = polygauss::weighted_overlap(
        polygauss::hermite(bra.n), std::sqrt(bra.lambda),
        polygauss::hermite(ket.n), std::sqrt(ket.lambda), extra, alpha);
    return {bra.n, ket.n, power,
            std::sqrt(bra.norm_sq * ket.norm_sq) * raw};
}

real moment(const EigenState& s, int k) { return modified_inner(s, s, k).value; }

real second_moment_closed_form(const EigenState& s) {
    const real t = static_cast<real>(2 * s.n + 1);
    const real g = s.model.gamma;
    const real lam = s.lambda;
    switch (s.model.dependence.kind) {
        case EDependence::Kind::Linear: {
            const real bracket = 1.0 - g * t / (4.0 * lam);
            const real last = 1.0 - (3.0 * g / (8.0 * lam)) * (t * t + 1.0) / t;
            return t / (2.0 * lam) / bracket * last;
        }
        case EDependence::Kind::Sqrt: {
            const real se = std::sqrt(s.energy);
            const real bracket = 1.0 - g * t / (8.0 * lam * se);
            const real last =
                1.0 - (3.0 * g / (16.0 * se)) * (t * t + 1.0) / (lam * t);
            return t / (2.0 * lam) / bracket * last;
        }
        default:
            throw std::invalid_argument(
                "closed-form mean square radius covers the linear and "
                "square-root dependences only");
    }
}

real moment_leading_factor(const EigenState& s, int k) {
    const real g = s.model.gamma;
    switch (s.model.dependence.kind) {
        case EDependence::Kind::Linear:
            return 1.0 - g * static_cast<real>(k + 1) / (4.0 * s.lambda);
        case EDependence::Kind::Sqrt:
            return 1.0 - g * static_cast<real>(k + 1) /
                             (4.0 * s.lambda * std::sqrt(s.energy));
        default:
            throw std::invalid_argument(
                "leading moment factor covers the linear and square-root "
                "dependences only");
    }
}

int critical_moment_order(const EigenState& s) {
    constexpr int k_cap = 1'000'000;
    for (int k = 2; k <= k_cap; k += 2)
        if (moment_leading_factor(s, k) < 0.0) return k;
    throw NoCriticalOrder(s.n);
}

ClosureReport closure_sum(const OscillatorModel& m, int j, int power,
                          int n_max) {
    ClosureReport rep;
    rep.j = j;
    rep.power = power;
    const EigenState ref = spectra::solve(m, j);
    real acc = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const real v = modified_inner(spectra::solve(m, n), ref, power).value;
        acc += v * v;
        rep.partial_sums.emplace_back(n, acc);
    }
    rep.direct_moment = moment(ref, 2 * power);
    return rep;
}

real closure_correction(const OscillatorModel& m, int n, int j) {
    const EigenState sn = spectra::solve(m, n);
    const EigenState sj = spectra::solve(m, j);
    const real w_nn = pair_weight(sn, sn).w;
    const real w_nj = pair_weight(sn, sj).w;
    polygauss::Poly extra = polygauss::Poly::Zero(3);
    extra[2] = w_nn - w_nj;
    const real raw = polygauss::weighted_overlap(
        polygauss::hermite(sj.n), std::sqrt(sj.lambda),
        polygauss::hermite(sn.n), std::sqrt(sn.lambda), extra,
        0.5 * (sj.lambda + sn.lambda));
    return std::sqrt(sj.norm_sq * sn.norm_sq) * raw;
}

SumRuleReport dipole_sum_rule(const OscillatorModel& m, int n_max) {
    SumRuleReport rep;
    const EigenState ground = spectra::solve(m, 0);
    real acc = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const EigenState sn = spectra::solve(m, n);
        const real v = modified_inner(sn, ground, 1).value;
        acc += (sn.energy - ground.energy) * v * v;
        rep.partial_sums.emplace_back(n, acc);
    }
    if (m.dependence.kind == EDependence::Kind::Linear)
        rep.closed_form =
            0.5 / (1.0 - m.gamma / (4.0 * ground.lambda));
    return rep;
}

real double_commutator_quadrature(const OscillatorModel& m) {
    if (m.dependence.kind != EDependence::Kind::Linear)
        throw std::invalid_argument(
            "the rational commutator average is defined for the linear "
            "dependence");
    const EigenState g0 = spectra::solve(m, 0);
    const real half = 12.0 / std::sqrt(g0.lambda);
    if (m.gamma > 0.0) {
        const real pole = std::sqrt(2.0 / m.gamma);
        if (pole <= half) throw PathologicalOperator(pole, half);
    }
    const real c2 = g0.norm_sq;
    const real lam = g0.lambda;
    const real g = m.gamma;
    // weight factor of the modified product times the rational operator,
    // multiplied out only numerically, point by point
    const auto integrand = [c2, lam, g](real x) {
        const real psi2 = c2 * std::exp(-lam * x * x);
        const real weight = 1.0 - 0.5 * g * x * x;
        const real op = 1.0 / (1.0 - 0.5 * g * x * x);
        return psi2 * weight * op;
    };
    return quadrature::integrate(integrand, -half, half, 1e-13);
}

CommutatorAverage double_commutator_average(const OscillatorModel& m) {
    try {
        return {double_commutator_quadrature(m), false};
    } catch (const PathologicalOperator&) {
        const EigenState g0 = spectra::solve(m, 0);
        return {1.0 / (1.0 - m.gamma / (4.0 * g0.lambda)), true};
    }
}

} // namespace edp::observables
