#include "csp/catalog.hpp"
#include "csp/derivation.hpp"
#include "csp/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace csp;

namespace {

const double pi = std::numbers::pi;

double admissible_alpha(const Solution& s)
{
    return s.alpha_sign == AlphaSign::Repulsive ? 1.0 : -1.0;
}

double unit_kappa(Regime r)
{
    return r == Regime::Flat ? 0.0 : (r == Regime::Hyperbolic ? -1.0 : 1.0);
}

} // namespace

TEST_SUITE("catalog") {

TEST_CASE("every entry is an exact solution")
{
    const auto& all = catalog_all();
    CHECK(all.size() == 33);
    std::set<std::string> ids;
    for (const auto& s : all) {
        CHECK_MESSAGE(symbolic_check(s).empty(), s.id);
        CHECK(poisson_defect(s).empty());
        CHECK(ids.insert(s.id).second);
        CHECK(s.finite_mass() == s.mass.has_value());
    }
}

TEST_CASE("catalog entries agree with the derivation engine")
{
    for (const auto& s : catalog_all()) {
        if (s.id == "SPH_TRIVIAL")
            continue;
        const SearchMode mode = s.background()                   ? SearchMode::Background
                                : s.family == Family::FlatPowerR ? SearchMode::Singular
                                                                 : SearchMode::Homogeneous;
        const auto out = evaluate_candidate({s.family, s.n}, s.regime, s.dim, mode);
        REQUIRE_MESSAGE(out.hit.has_value(), s.id);
        CHECK_MESSAGE(out.hit->u == s.u, s.id);
        CHECK_MESSAGE(out.hit->V == s.V, s.id);
        CHECK_MESSAGE(out.hit->amp_law == s.amp_law, s.id);
        if (s.background())
            CHECK_MESSAGE(out.hit->rho == *s.rho, s.id);
    }
}

TEST_CASE("filters")
{
    CatalogFilter f;
    f.regime = Regime::Hyperbolic;
    f.finite_mass = true;
    f.background = false;
    const auto hyp = catalog_list(f);
    REQUIRE(hyp.size() == 1);
    CHECK(hyp[0].id == "HYP_U1");

    CatalogFilter d6;
    d6.dim = 6;
    d6.background = false;
    const auto six = catalog_list(d6);
    REQUIRE(six.size() == 2);
    CHECK(six[0].id == "FLAT_CSV");
    CHECK(six[1].id == "FLAT_SINGULAR_D6");

    CatalogFilter rep;
    rep.alpha_sign = AlphaSign::Repulsive;
    for (const auto& s : catalog_list(rep))
        CHECK(s.alpha_sign != AlphaSign::Attractive);

    CHECK(catalog_list().size() == catalog_all().size());
    CHECK_THROWS_AS(catalog_get("NO_SUCH_ENTRY"), UnknownSolution);
}

TEST_CASE("closed-form masses")
{
    const auto csv = closed_form_mass(catalog_get("FLAT_CSV"), 0.0, -1.0);
    REQUIRE(csv);
    CHECK(*csv == doctest::Approx(96 * pi * pi * pi).epsilon(1e-14));
    CHECK(*closed_form_mass(catalog_get("FLAT_CSV"), 0.0, -2.0) == doctest::Approx(48 * pi * pi * pi));
    CHECK(*closed_form_mass(catalog_get("HYP_U1"), -1.0, -1.0) == doctest::Approx(48 * pi).epsilon(1e-14));
    // |kappa|^(1/2) scaling
    CHECK(*closed_form_mass(catalog_get("HYP_U1"), -4.0, -1.0) == doctest::Approx(96 * pi));
    CHECK(*closed_form_mass(catalog_get("BG_1D_SECH"), -1.0, 1.0) == doctest::Approx(16.0));
    const Solution& u3 = catalog_get("SPH_U3");
    CHECK(u3.mass_convention == MassConvention::RadialIntegral);
    CHECK(*closed_form_mass(u3, 1.0, 1.0) == doctest::Approx(4.0));
    CHECK_FALSE(closed_form_mass(catalog_get("HYP_U2"), -1.0, -1.0).has_value());
}

TEST_CASE("scaling family")
{
    const Solution& csv = catalog_get("FLAT_CSV");
    const double m = *closed_form_mass(csv, 0.0, -1.0);
    for (double a : {0.5, 2.0, 3.0})
        CHECK(*closed_form_mass(scale_flat_solution(csv, a), 0.0, -1.0) == doctest::Approx(a * a * m));
    CHECK(scale_flat_solution(csv, 1.0).scale == 1.0);
    CHECK_THROWS_AS(scale_flat_solution(catalog_get("HYP_U1"), 2.0), NotScalable);
    CHECK_THROWS_AS(scale_flat_solution(catalog_get("BG_FLAT_N3_D4"), 2.0), NotScalable);
    CHECK_THROWS_AS(scale_flat_solution(csv, -1.0), std::invalid_argument);
}

TEST_CASE("spherical entries and the compactness obstruction")
{
    CatalogFilter f;
    f.regime = Regime::Spherical;
    f.background = false;
    const auto sph = catalog_list(f);
    CHECK(sph.size() == 3);
    for (const auto& s : sph) {
        CHECK_MESSAGE(!s.singular.empty(), s.id);
        const auto rep = compactness_obstruction_check(s, 1.0, admissible_alpha(s));
        CHECK(rep.consistent);
        CHECK(rep.has_singularity);
    }
    const auto trivial = compactness_obstruction_check(catalog_get("SPH_TRIVIAL"), 1.0, -1.0, 2.5);
    REQUIRE(trivial.charge_integral);
    CHECK(std::abs(*trivial.charge_integral) <= 1e-10);
    CHECK_THROWS_AS(compactness_obstruction_check(catalog_get("HYP_U1"), -1.0, -1.0), std::invalid_argument);
}

TEST_CASE("singular radii")
{
    const auto eq = singular_radii(catalog_get("SPH_U1").singular, Space::spherical(4.0, 3));
    REQUIRE(eq.size() == 1);
    CHECK(eq[0] == doctest::Approx(pi / 4));
    const auto u2 = singular_radii(catalog_get("SPH_U2").singular, Space::spherical(1.0, 3));
    REQUIRE(u2.size() == 2);
    CHECK(u2[0] == 0.0);
    CHECK(u2[1] == doctest::Approx(pi));
    CHECK(catalog_get("FLAT_CSV").singular.empty());
}

TEST_CASE("amplitude laws give positive A^2 at admissible couplings")
{
    for (const auto& s : catalog_all()) {
        if (s.amp_law.free)
            continue;
        const double kappa = unit_kappa(s.regime);
        CHECK(s.amp_law.amp_sq(kappa, admissible_alpha(s)) > 0.0);
        CHECK_THROWS_AS(s.amp_law.amp_sq(kappa, -admissible_alpha(s)), SignIncompatible);
    }
}

TEST_CASE("engine hits become solution records")
{
    const auto hits = solve_homogeneous(Family::CurvedPowerS, Regime::Hyperbolic, {-8, -1}, {1, 12});
    REQUIRE(hits.size() == 2);
    const Solution s = solution_from_hit(hits[0]);
    CHECK(s.id == "hit:curved-s:n=-2:D=3:hyperbolic:homogeneous");
    CHECK(s.mass_kind == MassKind::Unknown);
    CHECK(s.singular.origin);
    CHECK(symbolic_check(s).empty());
}

}
