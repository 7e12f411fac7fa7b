#include "edp/quadrature.hpp"

#include <cmath>

namespace edp::quadrature {

namespace {
real simpson(real fa, real fm, real fb, real a, real b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

real adapt(const std::function<real(real)>& f, real a, real b, real fa,
           real fm, real fb, real whole, real tol, int depth) {
    const real m = 0.5 * (a + b);
    const real lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const real flm = f(lm), frm = f(rm);
    const real left = simpson(fa, flm, fm, a, m);
    const real right = simpson(fm, frm, fb, m, b);
    const real delta = left + right - whole;
    // second condition: the refinement has reached the roundoff floor of the
    // local sum, so further splitting can only chase noise
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol ||
        std::abs(delta) <= 1e-15 * (std::abs(left) + std::abs(right)))
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace

real integrate(const std::function<real(real)>& f, real a, real b, real tol) {
    const real m = 0.5 * (a + b);
    const real fa = f(a), fm = f(m), fb = f(b);
    return adapt(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 30);
}

real trapezoid(const std::vector<real>& values, real dx) {
    if (values.size() < 2) return 0.0;
    real acc = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
    return acc * dx;
}

} // namespace edp::quadrature
