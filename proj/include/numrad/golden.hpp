#pragma once

#include <cmath>
#include <functional>

namespace numrad {

struct LineOptimum {
    double x;
    double value;
    double width;  // final bracket width
};

/// Golden-section search for a maximum of f on [lo, hi]; stops once the
/// bracket is no wider than tol. Assumes f is unimodal on the bracket.
template <typename F>
LineOptimum golden_maximize(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498949;  // 1/φ
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc >= fd) {
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
    return fc >= fd ? LineOptimum{c, fc, b - a} : LineOptimum{d, fd, b - a};
}

template <typename F>
LineOptimum golden_minimize(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    auto r = golden_maximize([&](double x) { return -f(x); }, lo, hi, tol, max_iter);
    r.value = -r.value;
    return r;
}

}  // namespace numrad
