#pragma once

#include <limits>
#include <string_view>
#include <vector>

namespace csp {

enum class Regime { Flat, Hyperbolic, Spherical };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view text);

/// Complete simply-connected space of constant sectional curvature kappa.
///
/// Invariants: Hyperbolic <=> kappa < 0, Spherical <=> kappa > 0, Flat <=>
/// kappa == 0; dim >= 1.
class Space {
public:
    static Space flat(int dim);
    static Space hyperbolic(double kappa, int dim);
    static Space spherical(double kappa, int dim);
    /// Validating constructor used by callers that carry (regime, kappa) pairs.
    static Space make(Regime regime, double kappa, int dim);

    Regime regime() const noexcept { return regime_; }
    double kappa() const noexcept { return kappa_; }
    int dim() const noexcept { return dim_; }
    /// (-kappa)^{1/2} for hyperbolic, kappa^{1/2} for spherical, 0 for flat.
    double rate() const noexcept { return rate_; }

private:
    Space(Regime regime, double kappa, int dim);

    Regime regime_;
    double kappa_;
    int dim_;
    double rate_;
};

struct RadialDomain {
    double r_min = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
    /// Radii where S or C vanish: {0} off the sphere, {0, equator, antipode} on it.
    std::vector<double> boundary_singularities;
};

RadialDomain radial_domain(const Space& space);

/// Throws DomainError for r < 0 or r beyond the antipode.
void check_radius(const Space& space, double r);

/// S(r): sinh form for hyperbolic, sin form for spherical, r for flat.
double metric_S(const Space& space, double r);
double metric_C(const Space& space, double r);
/// S/C; throws PoleError on the spherical equator.
double metric_T(const Space& space, double r);
/// C/S, the radial Laplacian's first-order coefficient divided by (D-1).
double metric_cot(const Space& space, double r);

/// Area of the unit sphere in D dimensions, 2 pi^{D/2} / Gamma(D/2). D=1 gives 2.
double sphere_area(int dim);

double volume_weight(const Space& space, double r);

} // namespace csp
