#include "csp/quadrature.hpp"

#include "csp/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <limits>

namespace csp {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr int kRisingRun = 8;
constexpr double kRisingRatio = 0.99;

double gk_recurse(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                  int depth, double& error)
{
    double raw = 0.0;
    const double est = GK::integrate(f, a, b, 0, 0.0, &raw);
    // the raw estimate is on the reference interval [-1, 1]
    const double err = raw * 0.5 * (b - a);
    if (depth <= 0 || !std::isfinite(est) || err <= std::max(rel_tol * std::abs(est), abs_tol)) {
        error += err;
        return est;
    }
    const double mid = 0.5 * (a + b);
    return gk_recurse(f, a, mid, rel_tol, 0.5 * abs_tol, depth - 1, error)
         + gk_recurse(f, mid, b, rel_tol, 0.5 * abs_tol, depth - 1, error);
}

std::string near_label(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "near-r=%.12g", x);
    return buf;
}

struct SideResult {
    bool divergent = false;
    double total = 0.0;
    double error = 0.0;
    int windows = 0;
};

/// Window k spans [lo_k, hi_k]; returns lo == hi once it has collapsed.
using WindowFn = std::function<std::pair<double, double>(int)>;

SideResult integrate_side(const std::function<double(double)>& f, const WindowFn& window,
                          const QuadOptions& opt)
{
    SideResult side;
    double prev = std::numeric_limits<double>::quiet_NaN();
    double last_ratio = 1.0;
    int small = 0;
    int rising = 0;
    for (int k = 0; k < opt.max_windows; ++k) {
        const auto [lo, hi] = window(k);
        if (!(hi > lo) || !std::isfinite(hi))
            break;
        double err = 0.0;
        const double w = gauss_kronrod(f, lo, hi, opt.rel_tol, 0.0, 12, &err);
        ++side.windows;
        if (!std::isfinite(w)) {
            if (k > 2) {
                side.divergent = true;
                return side;
            }
            throw PoleError(near_label(0.5 * (lo + hi)) + ": integrand is not finite", 0.5 * (lo + hi));
        }
        if (err > 1e-3 * std::abs(w) + 1e-8 && k < 2)
            throw PoleError(near_label(0.5 * (lo + hi)) + ": unresolvable window", 0.5 * (lo + hi));
        side.error += err;
        if (std::isfinite(prev) && prev != 0.0) {
            last_ratio = std::abs(w / prev);
            rising = last_ratio >= kRisingRatio ? rising + 1 : 0;
            if (rising >= kRisingRun) {
                side.divergent = true;
                return side;
            }
        }
        side.total += w;
        prev = w;
        if (std::abs(w) <= opt.rel_tol * std::abs(side.total) || std::abs(w) <= opt.abs_tol) {
            if (++small >= 2)
                break;
        } else {
            small = 0;
        }
        if (k + 1 == opt.max_windows && last_ratio >= 1.0) {
            side.divergent = true;
            return side;
        }
    }
    // geometric tail beyond the last window
    if (std::isfinite(prev) && last_ratio < 1.0) {
        const double tail = prev * last_ratio / (1.0 - last_ratio);
        side.total += tail;
        side.error += std::abs(tail) * 1e-2;
    }
    return side;
}

} // namespace

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                     int max_depth, double* error)
{
    if (a == b)
        return 0.0;
    double err = 0.0;
    const double value = gk_recurse(f, a, b, rel_tol, abs_tol, max_depth, err);
    if (error)
        *error = err;
    return value;
}

IntegralResult integrate_radial(const std::function<double(double)>& f, double a, double b,
                                const QuadOptions& options)
{
    if (!(b >= a) || !std::isfinite(a))
        throw std::invalid_argument("integrate_radial needs a finite a <= b");
    IntegralResult out;
    if (a == b)
        return out;
    double pivot;
    WindowFn left;
    WindowFn right;
    if (std::isinf(b)) {
        pivot = a + 1.0;
        left = [a](int k) {
            return std::pair{a + std::ldexp(1.0, -k - 1), a + std::ldexp(1.0, -k)};
        };
        right = [a](int k) {
            return std::pair{a + std::ldexp(1.0, k), a + std::ldexp(1.0, k + 1)};
        };
    } else {
        pivot = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        left = [a, half](int k) {
            return std::pair{a + std::ldexp(half, -k - 1), a + std::ldexp(half, -k)};
        };
        right = [b, half](int k) {
            return std::pair{b - std::ldexp(half, -k), b - std::ldexp(half, -k - 1)};
        };
    }
    (void)pivot;

    const SideResult lo = integrate_side(f, left, options);
    if (lo.divergent) {
        out.status = IntegralStatus::Divergent;
        out.locus = a == 0.0 ? "small-r" : near_label(a);
        out.windows = lo.windows;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const SideResult hi = integrate_side(f, right, options);
    out.windows = lo.windows + hi.windows;
    if (hi.divergent) {
        out.status = IntegralStatus::Divergent;
        out.locus = std::isinf(b) ? "large-r" : near_label(b);
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = lo.total + hi.total;
    out.error_estimate = lo.error + hi.error;
    return out;
}

} // namespace csp
