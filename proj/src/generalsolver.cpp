#include "edp/generalsolver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edp/errors.hpp"
#include "edp/quadrature.hpp"

namespace edp::generalsolver {

namespace {

constexpr real kRenormAt = 1e250;

struct Workspace {
    std::vector<real> u;   // frozen potential on the grid
    real x0 = 0.0, dx = 0.0;
    real u_min = 0.0, cap = 0.0;
    int n_pts = 0;
};

Workspace prepare(const GeneralPotential& p, real z) {
    if (p.grid_points < 1000)
        throw std::invalid_argument("general solver needs at least 1000 points");
    if (!p.v0 || !p.v1 || !p.g)
        throw std::invalid_argument("general potential is missing a component");
    Workspace w;
    w.n_pts = p.grid_points | 1; // odd count keeps x = 0 on the grid
    const real half = box_halfwidth(p, z);
    w.x0 = -half;
    w.dx = 2.0 * half / static_cast<real>(w.n_pts - 1);
    w.u.resize(w.n_pts);
    const real coupling = potdsl::eval(*p.g, 0.0, z);
    for (int i = 0; i < w.n_pts; ++i) {
        const real x = w.x0 + w.dx * i;
        w.u[i] = potdsl::eval(*p.v0, x, z) + coupling * potdsl::eval(*p.v1, x, z);
        if (!std::isfinite(w.u[i]))
            throw NotConfining("potential is not finite at x = " +
                               std::to_string(x));
    }
    w.u_min = *std::min_element(w.u.begin(), w.u.end());
    w.cap = std::min(w.u.front(), w.u.back());
    if (w.cap - w.u_min <= 1e-9 * std::max(real(1), std::abs(w.cap)) + 1e-12)
        throw NotConfining("edge values do not rise above the well bottom");
    return w;
}

// Count interior sign changes of the left-shot Numerov solution; equals the
// number of levels below E.
int count_nodes(const Workspace& w, real e) {
    const real h2 = w.dx * w.dx;
    auto a = [&](int i) { return 1.0 - h2 / 12.0 * 2.0 * (w.u[i] - e); };
    real y_prev = 0.0;
    real y = 1e-10;
    real a_prev = a(0), a_cur = a(1);
    int nodes = 0;
    for (int i = 1; i + 1 < w.n_pts; ++i) {
        const real a_next = a(i + 1);
        real y_next = ((12.0 - 10.0 * a_cur) * y - a_prev * y_prev) / a_next;
        if (std::abs(y_next) > kRenormAt) {
            const real s = 1.0 / std::abs(y_next);
            y_next *= s;
            y *= s;
        }
        if (y != 0.0 && y_next != 0.0 && (y < 0.0) != (y_next < 0.0)) ++nodes;
        y_prev = y;
        y = y_next;
        a_prev = a_cur;
        a_cur = a_next;
    }
    return nodes;
}

// Matching defect of the two-sided solution at the outer turning point.
// Sign flips when E crosses a level.
real matching_defect(const Workspace& w, real e) {
    const int n_pts = w.n_pts;
    int m = n_pts / 2;
    for (int i = n_pts - 1; i >= 0; --i) {
        if (w.u[i] <= e) {
            m = i;
            break;
        }
    }
    m = std::clamp(m, 2, n_pts - 3);

    const real h2 = w.dx * w.dx;
    auto a = [&](int i) { return 1.0 - h2 / 12.0 * 2.0 * (w.u[i] - e); };

    // left sweep up to m+1
    real lp = 0.0, lc = 1e-10;
    real a_prev = a(0), a_cur = a(1);
    for (int i = 1; i <= m; ++i) {
        const real a_next = a(i + 1);
        real next = ((12.0 - 10.0 * a_cur) * lc - a_prev * lp) / a_next;
        if (std::abs(next) > kRenormAt) {
            const real s = 1.0 / std::abs(next);
            next *= s;
            lc *= s;
        }
        lp = lc;
        lc = next;
        a_prev = a_cur;
        a_cur = a_next;
    }
    // now lc = yL(m+1), lp = yL(m)

    // right sweep down to m-1
    real rp = 0.0, rc = 1e-10;
    a_prev = a(n_pts - 1);
    a_cur = a(n_pts - 2);
    for (int i = n_pts - 2; i >= m; --i) {
        const real a_next = a(i - 1);
        real next = ((12.0 - 10.0 * a_cur) * rc - a_prev * rp) / a_next;
        if (std::abs(next) > kRenormAt) {
            const real s = 1.0 / std::abs(next);
            next *= s;
            rc *= s;
        }
        rp = rc;
        rc = next;
        a_prev = a_cur;
        a_cur = a_next;
    }
    // now rc = yR(m-1), rp = yR(m); the right value at m+1 is two steps back
    // -- rebuild it: we stored only the last pair, so redo cheaply:
    // yR(m+1) is the value the loop held when i == m+1 finished; recover by
    // one backward step from (rp = yR(m), rc = yR(m-1)) using the recurrence
    // a(m+1) yR(m+1) = (12 - 10 a(m)) yR(m) - a(m-1) yR(m-1)
    const real r_at_m1 = ((12.0 - 10.0 * a(m)) * rp - a(m - 1) * rc) / a(m + 1);

    const real wronskian = lc * rp - r_at_m1 * lp; // yL(m+1) yR(m) - yR(m+1) yL(m)
    const real scale = std::abs(lc * rp) + std::abs(r_at_m1 * lp) + 1e-300;
    return wronskian / scale;
}

// Full two-sided wavefunction at energy e, glued at the outer turning point.
GridFunction build_wavefunction(const Workspace& w, real e) {
    const int n_pts = w.n_pts;
    int m = n_pts / 2;
    for (int i = n_pts - 1; i >= 0; --i) {
        if (w.u[i] <= e) {
            m = i;
            break;
        }
    }
    m = std::clamp(m, 2, n_pts - 3);

    const real h2 = w.dx * w.dx;
    auto a = [&](int i) { return 1.0 - h2 / 12.0 * 2.0 * (w.u[i] - e); };

    std::vector<real> left(m + 2, 0.0);
    left[1] = 1e-10;
    for (int i = 1; i <= m; ++i) {
        left[i + 1] =
            ((12.0 - 10.0 * a(i)) * left[i] - a(i - 1) * left[i - 1]) / a(i + 1);
        if (std::abs(left[i + 1]) > kRenormAt) {
            const real s = 1.0 / std::abs(left[i + 1]);
            for (int k = 0; k <= i + 1; ++k) left[k] *= s;
        }
    }
    std::vector<real> right(n_pts, 0.0);
    right[n_pts - 2] = 1e-10;
    for (int i = n_pts - 2; i > m; --i) {
        right[i - 1] =
            ((12.0 - 10.0 * a(i)) * right[i] - a(i + 1) * right[i + 1]) / a(i - 1);
        if (std::abs(right[i - 1]) > kRenormAt) {
            const real s = 1.0 / std::abs(right[i - 1]);
            for (int k = i - 1; k < n_pts; ++k) right[k] *= s;
        }
    }

    GridFunction psi;
    psi.x0 = w.x0;
    psi.dx = w.dx;
    psi.values.assign(n_pts, 0.0);
    const real r = (right[m] != 0.0) ? left[m] / right[m] : 0.0;
    for (int i = 0; i <= m; ++i) psi.values[i] = left[i];
    for (int i = m + 1; i < n_pts; ++i) psi.values[i] = r * right[i];

    std::vector<real> sq(psi.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = psi.values[i] * psi.values[i];
    const real norm = std::sqrt(quadrature::trapezoid(sq, w.dx));
    if (norm > 0.0)
        for (real& v : psi.values) v /= norm;
    return psi;
}

} // namespace

real frozen_potential(const GeneralPotential& p, real x, real z) {
    return potdsl::eval(*p.v0, x, z) +
           potdsl::eval(*p.g, 0.0, z) * potdsl::eval(*p.v1, x, z);
}

real box_halfwidth(const GeneralPotential& p, real z) {
    if (p.domain_halfwidth > 0.0) return p.domain_halfwidth;
    // curvature of the frozen well at the origin -> oscillator width scale
    const real h = 1e-3;
    const real c2 = (frozen_potential(p, h, z) - 2.0 * frozen_potential(p, 0.0, z) +
                     frozen_potential(p, -h, z)) /
                    (h * h);
    const real lambda_est = std::sqrt(std::max(c2, 1e-4));
    return std::clamp(12.0 / std::sqrt(lambda_est), 6.0, 40.0);
}

EigenResult eigen_of_fixed_z(const GeneralPotential& p, real z, int n) {
    if (n < 0) throw std::invalid_argument("negative node count");
    const Workspace w = prepare(p, z);

    real lo = w.u_min + 1e-12 * std::max(real(1), std::abs(w.u_min));
    real hi = w.cap;
    const int held = count_nodes(w, hi);
    if (held <= n) throw NodeCountUnreachable(n, held);

    // isolate the level by the node count: levels below E == count(E)
    const real coarse_tol = 1e-8;
    for (int it = 0; it < 300 && hi - lo > coarse_tol * std::max(real(1), std::abs(hi));
         ++it) {
        const real mid = 0.5 * (lo + hi);
        if (count_nodes(w, mid) > n)
            hi = mid;
        else
            lo = mid;
    }

    // refine on the matching defect when it changes sign across the bracket
    const real fine_tol = 1e-11;
    real d_lo = matching_defect(w, lo);
    real d_hi = matching_defect(w, hi);
    if ((d_lo < 0.0) != (d_hi < 0.0)) {
        for (int it = 0;
             it < 120 && hi - lo > fine_tol * std::max(real(1), std::abs(hi)); ++it) {
            const real mid = 0.5 * (lo + hi);
            const real d_mid = matching_defect(w, mid);
            if (d_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((d_mid < 0.0) == (d_lo < 0.0)) {
                lo = mid;
                d_lo = d_mid;
            } else {
                hi = mid;
            }
        }
    } else {
        // defect did not discriminate: push the node bisection to full depth
        for (int it = 0;
             it < 300 && hi - lo > fine_tol * std::max(real(1), std::abs(hi)); ++it) {
            const real mid = 0.5 * (lo + hi);
            if (count_nodes(w, mid) > n)
                hi = mid;
            else
                lo = mid;
        }
    }

    EigenResult res;
    res.energy = 0.5 * (lo + hi);
    res.psi = build_wavefunction(w, res.energy);
    res.nodes = n;
    return res;
}

FixedPointReport find_fixed_points(const GeneralPotential& p, int n, real z_lo,
                                   real z_hi, int cells) {
    if (!(z_hi > z_lo))
        throw std::invalid_argument("fixed point scan window is empty");
    if (cells < 2) throw std::invalid_argument("scan needs at least 2 cells");

    FixedPointReport rep;
    const real h = (z_hi - z_lo) / static_cast<real>(cells);
    std::vector<real> zs(cells + 1), fs(cells + 1);
    std::vector<bool> ok(cells + 1, false);
    for (int i = 0; i <= cells; ++i) {
        zs[i] = z_lo + h * i;
        try {
            fs[i] = eigen_of_fixed_z(p, zs[i], n).energy - zs[i];
            ok[i] = true;
        } catch (const Error& err) {
            // merge consecutive failing lattice points into one gap
            const real cell_lo = std::max(z_lo, zs[i] - h);
            const real cell_hi = std::min(z_hi, zs[i] + h);
            if (!rep.gaps.empty() && rep.gaps.back().z_hi >= cell_lo - 1e-15 &&
                rep.gaps.back().reason == err.what()) {
                rep.gaps.back().z_hi = cell_hi;
            } else {
                rep.gaps.push_back({cell_lo, cell_hi, err.what()});
            }
        }
    }

    for (int i = 0; i < cells; ++i) {
        if (!ok[i] || !ok[i + 1]) continue;
        if (fs[i] == 0.0) {
            FixedPointRoot root;
            root.n = n;
            root.index = static_cast<int>(rep.roots.size());
            root.z = zs[i];
            root.bracket = {zs[i], zs[i]};
            root.psi = eigen_of_fixed_z(p, zs[i], n).psi;
            rep.roots.push_back(std::move(root));
            continue;
        }
        if ((fs[i] < 0.0) == (fs[i + 1] < 0.0)) continue;
        real a = zs[i], b = zs[i + 1], fa = fs[i];
        try {
            for (int it = 0;
                 it < 120 && b - a > 1e-10 * std::max(real(1), std::abs(b)); ++it) {
                const real mid = 0.5 * (a + b);
                const real fm = eigen_of_fixed_z(p, mid, n).energy - mid;
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            FixedPointRoot root;
            root.n = n;
            root.index = static_cast<int>(rep.roots.size());
            root.z = 0.5 * (a + b);
            root.bracket = {a, b};
            root.psi = eigen_of_fixed_z(p, root.z, n).psi;
            rep.roots.push_back(std::move(root));
        } catch (const Error& err) {
            rep.gaps.push_back({a, b, err.what()});
        }
    }
    return rep;
}

GramReport independence_check(const std::vector<FixedPointRoot>& roots) {
    const auto k = static_cast<Eigen::Index>(roots.size());
    GramReport rep;
    rep.gram = Eigen::MatrixXd::Zero(k, k);
    if (k == 0) {
        rep.smallest_singular_value = 0.0;
        rep.independent = false;
        return rep;
    }

    // resample every wavefunction onto the finest grid over the common span
    real lo = roots[0].psi.x0, hi = roots[0].psi.x(roots[0].psi.size() - 1);
    real dx = roots[0].psi.dx;
    for (const auto& r : roots) {
        lo = std::max(lo, r.psi.x0);
        hi = std::min(hi, r.psi.x(r.psi.size() - 1));
        dx = std::min(dx, r.psi.dx);
    }
    if (!(hi > lo))
        throw std::invalid_argument("root wavefunctions share no support");
    const auto m = static_cast<std::size_t>(std::floor((hi - lo) / dx)) + 1;

    auto sample = [&](const GridFunction& f, real x) {
        const real t = (x - f.x0) / f.dx;
        const auto i = static_cast<std::ptrdiff_t>(std::floor(t));
        if (i < 0 || i + 1 >= static_cast<std::ptrdiff_t>(f.size()))
            return 0.0;
        const real frac = t - static_cast<real>(i);
        return f.values[i] * (1.0 - frac) + f.values[i + 1] * frac;
    };

    std::vector<std::vector<real>> resampled(roots.size(),
                                             std::vector<real>(m));
    for (std::size_t r = 0; r < roots.size(); ++r)
        for (std::size_t i = 0; i < m; ++i)
            resampled[r][i] = sample(roots[r].psi, lo + dx * static_cast<real>(i));

    std::vector<real> prod(m);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) {
            for (std::size_t t = 0; t < m; ++t)
                prod[t] = resampled[i][t] * resampled[j][t];
            const real v = quadrature::trapezoid(prod, dx);
            rep.gram(i, j) = v;
            rep.gram(j, i) = v;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep.gram);
    rep.smallest_singular_value = svd.singularValues().minCoeff();
    rep.independent = rep.smallest_singular_value >= 1e-8;
    return rep;
}

} // namespace edp::generalsolver
