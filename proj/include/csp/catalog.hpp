#pragma once

#include "csp/derivation.hpp"
#include "csp/geometry.hpp"
#include "csp/graded.hpp"
#include "csp/symbolic.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csp {

enum class MassConvention { Full, RadialIntegral };

std::string_view to_string(MassConvention convention);
MassConvention parse_mass_convention(std::string_view text);

/// Finite: closed form stored. Infinite: the mass integral diverges.
/// Unknown: engine hits, which carry no mass claim.
enum class MassKind { Finite, Infinite, Unknown };

struct SingularRadii {
    bool origin = false;
    bool equator = false;
    bool antipode = false;

    bool empty() const { return !origin && !equator && !antipode; }
    bool operator==(const SingularRadii&) const = default;
};

/// Numeric singular radii for a space of curvature kappa, ascending.
std::vector<double> singular_radii(const SingularRadii& set, const Space& space);

struct Solution {
    std::string id;
    Regime regime = Regime::Flat;
    int dim = 1;
    Family family = Family::FlatPowerC;
    int n = 0;
    RadialExpr u{Basis::FlatC};
    RadialExpr V{Basis::FlatC};
    /// Present for background solutions (possibly the empty expression).
    std::optional<RadialExpr> rho;
    Omega omega;
    AlphaSign alpha_sign = AlphaSign::Any;
    AmpLaw amp_law;
    SingularRadii singular;
    MassKind mass_kind = MassKind::Unknown;
    /// Present iff mass_kind == Finite; Magnitude grades.
    std::optional<GradedConst> mass;
    MassConvention mass_convention = MassConvention::Full;
    /// u_a(r) = a^{-2} u(r/a); flat homogeneous solutions only.
    double scale = 1.0;
    std::string provenance;

    Basis basis() const { return u.basis(); }
    bool background() const { return rho.has_value(); }
    bool finite_mass() const { return mass_kind == MassKind::Finite; }
};

/// alpha V - omega == Delta u / u and -Delta V - u^2 - rho == 0, both exactly
/// (A^2 replaced through the amplitude law). Returns an empty string when
/// both hold, otherwise a description of the failure.
std::string symbolic_check(const Solution& sol);

/// -Delta V - u^2 - rho after amplitude substitution; empty for exact solutions.
RadialExpr poisson_defect(const Solution& sol);

struct CatalogFilter {
    std::optional<Regime> regime;
    std::optional<int> dim;
    std::optional<AlphaSign> alpha_sign;
    std::optional<bool> finite_mass;
    std::optional<bool> background;
};

/// All entries in a fixed order; validated once on first use.
const std::vector<Solution>& catalog_all();
std::vector<Solution> catalog_list(const CatalogFilter& filter = {});
/// Throws UnknownSolution.
const Solution& catalog_get(std::string_view id);

/// Closed-form mass times scale^{D-4}; nullopt unless the mass is finite.
std::optional<double> closed_form_mass(const Solution& sol, double kappa, double alpha, double amp_sq = 1.0);

/// u_a(x) = a^{-2} u(x/a). Throws NotScalable for curved or background entries.
Solution scale_flat_solution(const Solution& sol, double a);

struct ObstructionReport {
    bool consistent = true;
    bool has_singularity = false;
    /// Background entries: integral of u^2 + rho over the sphere.
    std::optional<double> charge_integral;
    std::string verdict;
};

/// Spherical entries only (std::invalid_argument otherwise). A regular
/// homogeneous spherical solution is reported as a CONTRADICTION.
ObstructionReport compactness_obstruction_check(const Solution& sol, double kappa, double alpha,
                                                double amp_sq = 1.0);

/// Solution record for an engine hit (mass unknown, id derived from the hit).
Solution solution_from_hit(const DerivationHit& hit);

} // namespace csp
