#include "csp/derivation.hpp"
#include "csp/errors.hpp"

#include <doctest.h>

using namespace csp;

namespace {

TermKey key(int base, int odd = 0, int kappa = 0, int alpha = 0, int amp = 0)
{
    TermKey k;
    k.base_pow = base;
    k.odd_pow = odd;
    k.kappa_pow = kappa;
    k.alpha_pow = alpha;
    k.amp_pow = amp;
    return k;
}

AmpLaw law(int q, int kappa_pow)
{
    AmpLaw a;
    a.q = q;
    a.kappa_pow = kappa_pow;
    return a;
}

} // namespace

TEST_SUITE("derivation") {

TEST_CASE("integer ranges")
{
    CHECK(parse_int_range("-8..-1").lo == -8);
    CHECK(parse_int_range("-8..-1").hi == -1);
    CHECK(parse_int_range("3").size() == 1);
    CHECK(parse_int_range("+2..5").lo == 2);
    CHECK_THROWS_AS(parse_int_range("5..1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int_range("a..b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int_range("1..2..3"), std::invalid_argument);
    CHECK_THROWS_AS(solve_homogeneous(Family::FlatPowerC, Regime::Flat, {-100, 0}, {1, 3}), std::invalid_argument);
}

TEST_CASE("flat c-power search has a single hit")
{
    const auto hits = solve_homogeneous(Family::FlatPowerC, Regime::Flat, {-8, -1}, {1, 12});
    REQUIRE(hits.size() == 1);
    const auto& h = hits[0];
    CHECK(h.ansatz.n == -4);
    CHECK(h.dim == 6);
    CHECK(h.amp_law == law(-576, 0));
    CHECK(h.alpha_sign == AlphaSign::Attractive);
    CHECK(h.omega.value.is_zero());
    CHECK(h.omega.label == OmegaLabel::Limit);
    CHECK(h.rho.empty());
    // alpha V = Delta u / u = -24 c^-4
    RadialExpr V(Basis::FlatC);
    V.add_term(key(-4, 0, 0, -1), Rational(-24));
    CHECK(h.V == V);
}

TEST_CASE("hyperbolic searches")
{
    const auto c_hits = solve_homogeneous(Family::CurvedPowerC, Regime::Hyperbolic, {-8, -1}, {1, 12});
    REQUIRE(c_hits.size() == 1);
    CHECK(c_hits[0].ansatz.n == -2);
    CHECK(c_hits[0].dim == 3);
    CHECK(c_hits[0].amp_law == law(-36, 2));
    CHECK(c_hits[0].omega.value.is_zero());

    const auto s_hits = solve_homogeneous(Family::CurvedPowerS, Regime::Hyperbolic, {-8, -1}, {1, 12});
    REQUIRE(s_hits.size() == 2);
    CHECK(s_hits[0].ansatz.n == -2);
    CHECK(s_hits[0].dim == 3);
    CHECK(s_hits[0].amp_law == law(-4, 0));
    CHECK(s_hits[1].ansatz.n == -1);
    CHECK(s_hits[1].dim == 4);
    CHECK(s_hits[1].amp_law == law(-2, 1));
    // omega = -(-kappa) n (D+n-2) at n=-1, D=4 -> 2(-kappa)
    CHECK(s_hits[1].omega.value.evaluate(-1.0, -1.0) == doctest::Approx(2.0));
}

TEST_CASE("singular flat family")
{
    const auto hits = solve_singular_flat({1, 12});
    CHECK(hits.size() == 11);
    for (const auto& h : hits) {
        CHECK(h.ansatz.n == -2);
        CHECK(h.dim != 4);
        CHECK(h.amp_law == law(-4 * (h.dim - 4) * (h.dim - 4), 0));
        CHECK(h.alpha_sign == AlphaSign::Attractive);
    }
    const auto d4 = evaluate_candidate({Family::FlatPowerR, -2}, Regime::Flat, 4, SearchMode::Singular);
    CHECK_FALSE(d4.hit.has_value());
    CHECK(d4.zero_amplitude);
}

TEST_CASE("flat background hits")
{
    const auto hits = solve_background(Family::FlatPowerC, Regime::Flat, {-8, -1}, {1, 12});
    bool n3d4 = false, n3d5 = false, n4d4 = false;
    for (const auto& h : hits) {
        if (h.ansatz.n == -3 && (h.dim == 4 || h.dim == 5)) {
            RadialExpr rho(Basis::FlatC);
            rho.add_term(key(-8, 0, 0, -1), Rational(-360));
            CHECK(h.rho == rho);
            (h.dim == 4 ? n3d4 : n3d5) = true;
        }
        if (h.ansatz.n == -4 && h.dim == 4) {
            RadialExpr rho(Basis::FlatC);
            rho.add_term(key(-6, 0, 0, -1), Rational(256));
            CHECK(h.rho == rho);
            CHECK(h.amp_law == law(-576, 0));
            n4d4 = true;
        }
    }
    CHECK(n3d4);
    CHECK(n3d5);
    CHECK(n4d4);
}

TEST_CASE("curved background hits and the alpha-sign trichotomy")
{
    for (int D = 1; D <= 6; ++D) {
        const auto out = evaluate_candidate({Family::CurvedPowerC, -2}, Regime::Hyperbolic, D, SearchMode::Background);
        REQUIRE(out.hit.has_value());
        RadialExpr rho(Basis::CurvedC);
        if (D != 3)
            rho.add_term(key(-2, 0, 2, -1), Rational(-12 * (D - 3)));
        CHECK(out.hit->rho == rho);
        CHECK(out.hit->amp_law == law(-36, 2));
    }
    for (int D = 1; D <= 6; ++D) {
        const SignClass sc = classify_alpha_sign({Family::CurvedPowerC, -1}, Regime::Hyperbolic, D,
                                                 SearchMode::Background);
        if (D < 3) {
            CHECK(sc.status == SignClass::Status::Ok);
            CHECK(sc.alpha_sign == AlphaSign::Repulsive);
        } else if (D == 3) {
            CHECK(sc.status == SignClass::Status::NoSolution);
        } else {
            CHECK(sc.status == SignClass::Status::Ok);
            CHECK(sc.alpha_sign == AlphaSign::Attractive);
        }
        if (D != 3) {
            const auto out = evaluate_candidate({Family::CurvedPowerC, -1}, Regime::Hyperbolic, D,
                                                SearchMode::Background);
            REQUIRE(out.hit.has_value());
            RadialExpr rho(Basis::CurvedC);
            rho.add_term(key(-4, 0, 2, -1), Rational(-12));
            CHECK(out.hit->rho == rho);
            CHECK(out.hit->amp_law == law(-4 * (D - 3), 2));
        }
    }
}

TEST_CASE("family and regime must agree")
{
    CHECK_THROWS_AS(solve_homogeneous(Family::FlatPowerC, Regime::Hyperbolic, {-2, -1}, {1, 3}), ModeMismatch);
    CHECK_THROWS_AS(solve_homogeneous(Family::CurvedPowerC, Regime::Flat, {-2, -1}, {1, 3}), ModeMismatch);
    CHECK_THROWS(evaluate_candidate({Family::FlatPowerC, -4}, Regime::Flat, 6, SearchMode::Singular));
}

TEST_CASE("hits are ordered by dimension, then exponent")
{
    const auto hits = solve_background(Family::CurvedPowerC, Regime::Hyperbolic, {-8, -1}, {1, 6});
    for (std::size_t i = 1; i < hits.size(); ++i) {
        const bool ordered = hits[i - 1].dim < hits[i].dim
                             || (hits[i - 1].dim == hits[i].dim && hits[i - 1].ansatz.n < hits[i].ansatz.n);
        CHECK(ordered);
    }
}

TEST_CASE("omega labels")
{
    CHECK(omega_of({Family::CurvedPowerC, -2}, Regime::Hyperbolic, 3).label == OmegaLabel::Limit);
    CHECK(omega_of({Family::CurvedPowerC, -2}, Regime::Spherical, 3).label == OmegaLabel::Conventional);
    // omega = -(-kappa) n (D+n-1): n=-2, D=3 gives 0
    CHECK(omega_of({Family::CurvedPowerC, -2}, Regime::Hyperbolic, 3).value.is_zero());
    CHECK(omega_of({Family::CurvedPowerC, -1}, Regime::Hyperbolic, 5).value.evaluate(-1.0, -1.0)
          == doctest::Approx(3.0));
}

}
