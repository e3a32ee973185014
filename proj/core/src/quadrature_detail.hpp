#pragma once

// Internal cumulative-quadrature tables used by the dynamics module. Each
// table stores an adaptively refined partition of [a, b] together with the
// cumulative integral at every node; values between nodes are recovered with
// a fixed-order Gauss rule over the sub-interval, and times are inverted by
// safeguarded Newton iteration.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "twocenter/errors.hpp"

namespace twocenter::detail {

using Integrand = std::function<double(double)>;

struct CumTable {
    std::vector<double> x;  // partition nodes, ascending
    std::vector<double> F;  // F[i] = integral over [x0, x[i]]
    Integrand f;

    double total() const { return F.back(); }

    /// Integral from x.front() to xq (must lie within the table range).
    double value(double xq) const {
        const auto it = std::upper_bound(x.begin(), x.end(), xq);
        std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        i = std::min(i, x.size() - 2);
        return F[i] + boost::math::quadrature::gauss<double, 15>::integrate(f, x[i], xq);
    }

    /// Solves value(x) = target for x. f must be positive; intervals are kept
    /// short enough during construction that a 7-point Gauss sub-integral is
    /// exact to roundoff, so safeguarded Newton converges in a few steps.
    double invert(double target) const {
        target = std::clamp(target, 0.0, total());
        const auto it = std::upper_bound(F.begin(), F.end(), target);
        std::size_t i = (it == F.begin()) ? 0 : static_cast<std::size_t>(it - F.begin()) - 1;
        i = std::min(i, x.size() - 2);
        double lo = x[i], hi = x[i + 1];
        const double width = hi - lo;
        const double resid_tol = 3e-14 * std::max(total(), 1e-300);
        double t = lo + width * std::clamp((target - F[i]) /
                                               std::max(F[i + 1] - F[i], 1e-300), 0.0, 1.0);
        for (int iter = 0; iter < 30; ++iter) {
            const double resid =
                F[i] + boost::math::quadrature::gauss<double, 7>::integrate(f, x[i], t) - target;
            if (std::fabs(resid) <= resid_tol) return t;
            if (resid > 0) hi = t; else lo = t;
            const double step = resid / std::max(f(t), 1e-300);
            double next = t - step;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::fabs(next - t) <= 1e-16 * std::max(1.0, std::fabs(t))) return next;
            t = next;
            if (hi - lo <= 1e-16 * width) break;
        }
        return t;
    }
};

/// Adaptive cumulative integral of a positive integrand. Sub-intervals are
/// bisected until the two-level estimate (parent rule value against the sum
/// over its halves) meets either a length-proportional share of the requested
/// relative tolerance or a local relative bound; the latter is valid for
/// positive integrands and is what terminates on sharp integrable spikes,
/// where single-application error estimates bottom out at a noise floor.
inline CumTable cumulative_integral(Integrand f, double a, double b, double rel_tol,
                                    std::size_t max_intervals = (1u << 20)) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

    rel_tol = std::max(rel_tol, 5e-14);

    auto rule = [&f](double lo, double hi) { return GK::integrate(f, lo, hi, 0); };

    struct Seg { double a, b, val; };
    const double span = b - a;
    const double whole = rule(a, b);
    const double ref = std::max(std::fabs(whole), 1e-300);

    std::vector<Seg> done;
    std::size_t evals = 1;

    // Children are always evaluated; the parent value only supplies the
    // two-level error estimate. Intervals are also kept below span/64 so the
    // low-order sub-integrals used by invert() stay exact.
    auto process = [&](auto&& self, double lo, double hi, double parent_val) -> void {
        if (++evals > max_intervals)
            throw QuadratureFailure("cumulative quadrature failed to converge");
        const double mid = 0.5 * (lo + hi);
        const double left = rule(lo, mid);
        const double right = rule(mid, hi);
        const double err = std::fabs(left + right - parent_val);
        const double budget = std::max(rel_tol * ref * ((hi - lo) / span),
                                       0.25 * rel_tol * std::fabs(left + right));
        const bool too_long = (hi - lo) > span / 64.0;
        if ((err <= budget && !too_long) || (hi - lo) <= 1e-14 * span) {
            done.push_back({lo, mid, left});
            done.push_back({mid, hi, right});
        } else {
            self(self, lo, mid, left);
            self(self, mid, hi, right);
        }
    };
    process(process, a, b, whole);
    std::sort(done.begin(), done.end(), [](const Seg& u, const Seg& v) { return u.a < v.a; });

    CumTable table;
    table.f = std::move(f);
    table.x.reserve(done.size() + 1);
    table.F.reserve(done.size() + 1);
    table.x.push_back(a);
    table.F.push_back(0.0);
    double acc = 0.0;
    for (const Seg& s : done) {
        acc += s.val;
        table.x.push_back(s.b);
        table.F.push_back(acc);
    }
    return table;
}

}  // namespace twocenter::detail
