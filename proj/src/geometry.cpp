#include "csp/geometry.hpp"

#include "csp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace csp {

std::string_view to_string(Regime regime)
{
    switch (regime) {
    case Regime::Flat: return "flat";
    case Regime::Hyperbolic: return "hyperbolic";
    case Regime::Spherical: return "spherical";
    }
    return "?";
}

Regime parse_regime(std::string_view text)
{
    if (text == "flat") return Regime::Flat;
    if (text == "hyperbolic") return Regime::Hyperbolic;
    if (text == "spherical") return Regime::Spherical;
    throw std::invalid_argument("unknown regime: " + std::string(text));
}

Space::Space(Regime regime, double kappa, int dim)
    : regime_(regime), kappa_(kappa), dim_(dim), rate_(std::sqrt(std::abs(kappa)))
{
    if (dim < 1)
        throw std::invalid_argument("dimension must be >= 1");
    if (!std::isfinite(kappa))
        throw std::invalid_argument("curvature must be finite");
    switch (regime) {
    case Regime::Flat:
        if (kappa != 0.0)
            throw std::invalid_argument("flat space requires kappa = 0");
        break;
    case Regime::Hyperbolic:
        if (!(kappa < 0.0))
            throw std::invalid_argument("hyperbolic space requires kappa < 0");
        break;
    case Regime::Spherical:
        if (!(kappa > 0.0))
            throw std::invalid_argument("spherical space requires kappa > 0");
        break;
    }
}

Space Space::flat(int dim) { return Space(Regime::Flat, 0.0, dim); }
Space Space::hyperbolic(double kappa, int dim) { return Space(Regime::Hyperbolic, kappa, dim); }
Space Space::spherical(double kappa, int dim) { return Space(Regime::Spherical, kappa, dim); }
Space Space::make(Regime regime, double kappa, int dim) { return Space(regime, kappa, dim); }

RadialDomain radial_domain(const Space& space)
{
    RadialDomain domain;
    domain.boundary_singularities.push_back(0.0);
    if (space.regime() == Regime::Spherical) {
        domain.r_max = std::numbers::pi / space.rate();
        domain.boundary_singularities.push_back(domain.r_max / 2);
        domain.boundary_singularities.push_back(domain.r_max);
    }
    return domain;
}

void check_radius(const Space& space, double r)
{
    if (!(r >= 0.0))
        throw DomainError("radius must be >= 0, got " + std::to_string(r));
    if (space.regime() == Regime::Spherical && r > std::numbers::pi / space.rate())
        throw DomainError("radius beyond the antipode: " + std::to_string(r));
}


double metric_S(const Space& space, double r)
{
    check_radius(space, r);
    switch (space.regime()) {
    case Regime::Flat: return r;
    case Regime::Hyperbolic: return std::sinh(space.rate() * r) / space.rate();
    case Regime::Spherical: return std::sin(space.rate() * r) / space.rate();
    }
    return 0.0;
}

double metric_C(const Space& space, double r)
{
    check_radius(space, r);
    switch (space.regime()) {
    case Regime::Flat: return 1.0;
    case Regime::Hyperbolic: return std::cosh(space.rate() * r);
    case Regime::Spherical: return std::cos(space.rate() * r);
    }
    return 1.0;
}

double metric_T(const Space& space, double r)
{
    const double c = metric_C(space, r);
    // cos(pi/2) rounds to ~6e-17, never exactly zero
    if (space.regime() == Regime::Spherical && std::abs(c) < 64 * std::numeric_limits<double>::epsilon())
        throw PoleError("T(r) has a pole on the equator", r);
    return metric_S(space, r) / c;
}

double metric_cot(const Space& space, double r)
{
    const double s = metric_S(space, r);
    if (s == 0.0)
        throw PoleError("C/S has a pole where S vanishes", r);
    return metric_C(space, r) / s;
}

double sphere_area(int dim)
{
    if (dim < 1)
        throw std::invalid_argument("sphere_area needs D >= 1");
    const double half = 0.5 * dim;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double volume_weight(const Space& space, double r)
{
    return std::pow(metric_S(space, r), space.dim() - 1);
}

} // namespace csp
