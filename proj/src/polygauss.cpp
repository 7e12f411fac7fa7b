#include "edp/polygauss.hpp"

#include <cmath>
#include <stdexcept>

namespace edp::polygauss {

Poly hermite(int n) {
    if (n < 0) throw std::invalid_argument("hermite: negative order");
    Poly prev = Poly::Zero(1);
    prev[0] = 1.0; // H_0 = 1
    if (n == 0) return prev;
    Poly cur = Poly::Zero(2);
    cur[1] = 2.0; // H_1 = 2x
    for (int k = 1; k < n; ++k) {
        // H_{k+1}(x) = 2x H_k(x) - 2k H_{k-1}(x)
        Poly next = Poly::Zero(cur.size() + 1);
        next.segment(1, cur.size()) = 2.0 * cur;
        next.head(prev.size()) -= 2.0 * static_cast<real>(k) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

real eval(const Poly& p, real x) {
    real acc = 0.0;
    for (Eigen::Index i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.size() == 0 || b.size() == 0) return Poly::Zero(1);
    Poly out = Poly::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        out.segment(i, b.size()) += a[i] * b;
    }
    return out;
}

Poly scale_argument(const Poly& p, real s) {
    Poly out = p;
    real f = 1.0;
    for (Eigen::Index i = 1; i < out.size(); ++i) {
        f *= s;
        out[i] *= f;
    }
    return out;
}

real gaussian_moment(int m, real alpha) {
    if (m < 0) throw std::invalid_argument("gaussian_moment: negative power");
    if (!(alpha > 0.0))
        throw std::invalid_argument("gaussian_moment: alpha must be positive");
    if (m % 2 == 1) return 0.0;
    real acc = std::sqrt(M_PI / alpha);
    // moment(2k) = moment(2k-2) * (2k-1) / (2 alpha)
    for (int k = 1; 2 * k <= m; ++k)
        acc *= static_cast<real>(2 * k - 1) / (2.0 * alpha);
    return acc;
}

namespace {
real pairwise_range(const std::vector<real>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 4) {
        real s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_range(v, lo, mid) + pairwise_range(v, mid, hi);
}
} // namespace

real pairwise_sum(const std::vector<real>& terms) {
    if (terms.empty()) return 0.0;
    return pairwise_range(terms, 0, terms.size());
}

real weighted_overlap(const Poly& pA, real sA, const Poly& pB, real sB,
                      const Poly& extra, real alpha) {
    const Poly prod =
        multiply(multiply(scale_argument(pA, sA), scale_argument(pB, sB)), extra);
    std::vector<real> terms;
    terms.reserve(static_cast<std::size_t>(prod.size() / 2 + 1));
    for (Eigen::Index m = 0; m < prod.size(); m += 2) {
        if (prod[m] == 0.0) continue;
        terms.push_back(prod[m] * gaussian_moment(static_cast<int>(m), alpha));
    }
    return pairwise_sum(terms);
}

} // namespace edp::polygauss
