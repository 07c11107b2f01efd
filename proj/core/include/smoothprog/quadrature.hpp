#pragma once

#include "smoothprog/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace smoothprog {

struct QuadratureSettings {
    /// Bisection depth allowed below each initial panel.
    unsigned max_depth = 18;
    /// Tolerance relative to the integral of |f| over the range.
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
};

template <class T>
struct Integral {
    T value{};
    double error = 0.0;
    /// Integral of |f| (as estimated by the rule); the natural error scale.
    double l1 = 0.0;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) over [a, b]. The range is cut
/// into `panels` equal pieces first, then the piece with the largest error
/// estimate is bisected until the summed error meets
/// max(abs_tol, rel_tol * integral of |f|). Works for real and
/// std::complex<double> valued f.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSettings& settings, std::size_t panels = 1)
    -> Integral<decltype(f(a))>
{
    using Value = decltype(f(a));
    using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
    struct Piece {
        double lo, hi;
        Value value;
        double error, l1;
        unsigned depth;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    auto rule = [&](double lo, double hi, unsigned depth) {
        Piece p{lo, hi, Value{}, 0.0, 0.0, depth};
        p.value = Rule::integrate(f, lo, hi, 0, 0.0, &p.error, &p.l1);
        return p;
    };

    Integral<Value> out;
    if (!(b > a))
        return out;
    panels = std::max<std::size_t>(panels, 1);
    const double width = (b - a) / static_cast<double>(panels);

    std::priority_queue<Piece> open;
    std::vector<Piece> done;
    double error = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = i + 1 == panels ? b : a + width * static_cast<double>(i + 1);
        Piece p = rule(lo, hi, 0);
        error += p.error;
        l1 += p.l1;
        open.push(p);
    }
    while (!open.empty() && error > std::max(settings.abs_tol, settings.rel_tol * l1)) {
        Piece top = open.top();
        open.pop();
        if (top.depth >= settings.max_depth) {
            done.push_back(top);
            continue;
        }
        const double mid = 0.5 * (top.lo + top.hi);
        Piece left = rule(top.lo, mid, top.depth + 1);
        Piece right = rule(mid, top.hi, top.depth + 1);
        error += left.error + right.error - top.error;
        l1 += left.l1 + right.l1 - top.l1;
        open.push(left);
        open.push(right);
    }
    for (; !open.empty(); open.pop())
        done.push_back(open.top());
    // Re-sum from the leaves; the running totals only steer the loop.
    std::sort(done.begin(), done.end(), [](const Piece& l, const Piece& r) { return l.lo < r.lo; });
    for (const Piece& p : done) {
        out.value += p.value;
        out.error += p.error;
        out.l1 += p.l1;
    }
    const double allowed = 100.0 * std::max(settings.abs_tol, settings.rel_tol * out.l1) +
                           64.0 * std::numeric_limits<double>::epsilon() * out.l1;
    if (!(out.error <= allowed))
        throw NumericError("adaptive quadrature did not converge", out.error);
    return out;
}

} // namespace smoothprog
