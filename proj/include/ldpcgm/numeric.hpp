#pragma once

#include <cmath>
#include <utility>

namespace ldpcgm::numeric {

struct Minimum {
    double x;
    double value;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi].
template <class F>
Minimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

template <class F>
Minimum golden_section_maximize(F&& f, double lo, double hi, double tol) {
    Minimum m = golden_section_minimize([&](double x) { return -f(x); }, lo, hi, tol);
    m.value = -m.value;
    return m;
}

/// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
/// Returns the midpoint of the final bracket.
template <class F>
double bisect(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    double flo = f(lo);
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ldpcgm::numeric
