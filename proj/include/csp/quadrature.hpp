#pragma once

#include <functional>
#include <string>

namespace csp {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    /// Window cap per side.
    int max_windows = 400;
};

enum class IntegralStatus { Converged, Divergent };

struct IntegralResult {
    IntegralStatus status = IntegralStatus::Converged;
    double value = 0.0;
    double error_estimate = 0.0;
    /// "small-r", "large-r" or "near-r=<x>" for divergent results.
    std::string locus;
    int windows = 0;

    bool converged() const { return status == IntegralStatus::Converged; }
};

/// Adaptive bisection of [a, b] driven by the Kronrod-Gauss (15, 7) difference.
/// Stops when the estimate is within max(rel_tol |I|, abs_tol) or at max_depth.
double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     double abs_tol = 0.0, int max_depth = 12, double* error = nullptr);

/// Integral of f over [a, b] (b may be +infinity).
///
/// The range is cut at a pivot into dyadic windows that shrink toward each
/// endpoint (or double toward infinity); every window is a Gauss-Kronrod
/// (7, 15) adaptive integral. A side converges once two consecutive windows
/// fall below rel_tol of the side total, after a geometric tail correction.
/// Windows whose magnitude stops decaying mark the side DIVERGENT.
/// Throws PoleError when an interior window cannot be resolved.
IntegralResult integrate_radial(const std::function<double(double)>& f, double a, double b,
                                const QuadOptions& options = {});

} // namespace csp
