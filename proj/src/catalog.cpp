#include "csp/catalog.hpp"

#include "csp/errors.hpp"
#include "csp/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace csp {

std::string_view to_string(MassConvention convention)
{
    return convention == MassConvention::Full ? "FULL" : "RADIAL_INTEGRAL";
}

MassConvention parse_mass_convention(std::string_view text)
{
    if (text == "FULL") return MassConvention::Full;
    if (text == "RADIAL_INTEGRAL") return MassConvention::RadialIntegral;
    throw std::invalid_argument("unknown mass convention: " + std::string(text));
}

std::vector<double> singular_radii(const SingularRadii& set, const Space& space)
{
    std::vector<double> out;
    if (set.origin)
        out.push_back(0.0);
    if (space.regime() == Regime::Spherical) {
        const double half = 0.5 * std::numbers::pi / space.rate();
        if (set.equator)
            out.push_back(half);
        if (set.antipode)
            out.push_back(2.0 * half);
    }
    return out;
}

namespace {

RadialExpr mono(Basis basis, const Rational& coeff, int base, int odd = 0, int kappa = 0, int alpha = 0,
                int amp = 0)
{
    return RadialExpr::monomial(basis, coeff, TermKey{base, odd, kappa, alpha, amp});
}

RadialExpr omega_expr(Basis basis, const Omega& omega)
{
    if (omega.value.is_zero())
        return RadialExpr(basis);
    if (boost::multiprecision::denominator(omega.value.kappa_pow) != 1)
        throw BasisError("omega needs an integral curvature grade");
    const int k = static_cast<int>(boost::multiprecision::numerator(omega.value.kappa_pow));
    return mono(basis, omega.value.coeff, 0, 0, k, omega.value.alpha_pow, omega.value.amp_pow);
}

/// Mass coefficient * Sphere_{d} * |kappa|^k / |alpha|.
GradedConst mass_of(const Rational& coeff, int sphere_dim, const Rational& kappa_pow, int pi_pow = 0)
{
    GradedConst g;
    g.coeff = coeff;
    g.pi_pow = pi_pow;
    g.sphere_dim = sphere_dim;
    g.kappa_pow = kappa_pow;
    g.alpha_pow = -1;
    g.base = GradeBase::Magnitude;
    return g;
}

Omega omega_const(const Rational& coeff, int kappa_pow, Regime regime)
{
    Omega o;
    o.value.coeff = coeff;
    o.value.kappa_pow = coeff == 0 ? 0 : kappa_pow;
    o.label = regime == Regime::Spherical ? OmegaLabel::Conventional : OmegaLabel::Limit;
    return o;
}

AmpLaw law(const Rational& q, int kappa_pow)
{
    AmpLaw a;
    a.q = q;
    a.kappa_pow = kappa_pow;
    return a;
}

Solution base_entry(std::string id, Regime regime, int dim, Family family, int n, const AmpLaw& amp)
{
    Solution s;
    s.id = std::move(id);
    s.regime = regime;
    s.dim = dim;
    s.family = family;
    s.n = n;
    s.amp_law = amp;
    s.alpha_sign = amp.required_sign(regime);
    s.u = mono(family_basis(family), 1, n, 0, 0, 0, 1);
    return s;
}

void add_flat_entries(std::vector<Solution>& out)
{
    const Basis c = Basis::FlatC;
    {
        Solution s = base_entry("FLAT_CSV", Regime::Flat, 6, Family::FlatPowerC, -4, law(-576, 0));
        s.V = mono(c, -24, -4, 0, 0, -1);
        s.omega = omega_const(0, 0, Regime::Flat);
        s.mass_kind = MassKind::Finite;
        s.mass = mass_of(96, 5, 0);
        s.provenance = "flat homogeneous c-power solution u = 24(-alpha)^{-1/2} c^{-4}; also quoted as n = -2, "
                       "the exponent of c^2";
        out.push_back(std::move(s));
    }
    for (int d = 1; d <= 12; ++d) {
        if (d == 4)
            continue;
        Solution s = base_entry("FLAT_SINGULAR_D" + std::to_string(d), Regime::Flat, d, Family::FlatPowerR, -2,
                                law(Rational(-4 * (d - 4) * (d - 4)), 0));
        s.V = mono(Basis::FlatR, Rational(-2 * (d - 4)), -2, 0, 0, -1);
        s.omega = omega_const(0, 0, Regime::Flat);
        s.singular.origin = true;
        s.mass_kind = MassKind::Infinite;
        s.provenance = "singular r^{-2} solution, A^2 = 4(D-4)^2/(-alpha); the reference amplitude "
                       "2(D-4)(-alpha)^{-1} is not dimensionally consistent and is not used";
        out.push_back(std::move(s));
    }
}

void add_curved_homogeneous(std::vector<Solution>& out)
{
    const Basis cb = Basis::CurvedC;
    const Basis sb = Basis::CurvedS;
    for (Regime regime : {Regime::Hyperbolic, Regime::Spherical}) {
        const bool sph = regime == Regime::Spherical;
        const std::string prefix = sph ? "SPH_" : "HYP_";
        {
            Solution s = base_entry(prefix + "U1", regime, 3, Family::CurvedPowerC, -2, law(-36, 2));
            s.V = mono(cb, -6, -2, 0, 1, -1);
            s.omega = omega_const(0, 0, regime);
            if (sph) {
                s.singular.equator = true;
                s.mass_kind = MassKind::Infinite;
                s.provenance = "spherical continuation of u1 = 6(-kappa)(-alpha)^{-1/2} C^{-2}; pole on the equator";
            } else {
                s.mass_kind = MassKind::Finite;
                s.mass = mass_of(12, 2, Rational(1, 2));
                s.provenance = "u1 = 6(-kappa)(-alpha)^{-1/2} C^{-2}, square integrable";
            }
            out.push_back(std::move(s));
        }
        {
            Solution s = base_entry(prefix + "U2", regime, 3, Family::CurvedPowerS, -2, law(-4, 0));
            s.V = mono(sb, 2, -2, 0, 0, -1);
            s.omega = omega_const(0, 0, regime);
            s.singular.origin = true;
            s.singular.antipode = sph;
            s.mass_kind = MassKind::Infinite;
            s.provenance = "u2 = 2(-alpha)^{-1/2} S^{-2}; reference amplitude 2(-kappa)(-alpha)^{-1/2} agrees only "
                           "at |kappa| = 1; mass diverges at small r";
            out.push_back(std::move(s));
        }
        {
            Solution s = base_entry(prefix + "U3", regime, 4, Family::CurvedPowerS, -1, law(-2, 1));
            s.V = mono(sb, -1, -2, 0, 0, -1);
            s.omega = omega_const(2, 1, regime);
            s.singular.origin = true;
            s.singular.antipode = sph;
            if (sph) {
                s.mass_kind = MassKind::Finite;
                s.mass = mass_of(4, 3, 0);
                s.mass->sphere_dim.reset();
                s.mass_convention = MassConvention::RadialIntegral;
                s.provenance = "spherical u3 needs alpha > 0 (A^2 = 2 kappa / alpha); radial integral 4/alpha, "
                               "quoted as 4 kappa/(-alpha) without the sphere-area factor";
            } else {
                s.mass_kind = MassKind::Infinite;
                s.provenance = "u3 = (2(-kappa)/(-alpha))^{1/2} S^{-1}; reference amplitude 2^{1/2}(-kappa)(-alpha)^{-1/2} "
                               "agrees only at |kappa| = 1; mass diverges at large r";
            }
            out.push_back(std::move(s));
        }
    }
}

void add_background_entries(std::vector<Solution>& out)
{
    const Basis c = Basis::FlatC;
    {
        Solution s = base_entry("BG_FLAT_N3_D4", Regime::Flat, 4, Family::FlatPowerC, -3, law(144, 0));
        s.V = mono(c, 3, -2, 0, 0, -1) + mono(c, -15, -4, 0, 0, -1);
        s.rho = mono(c, -360, -8, 0, 0, -1);
        s.omega = omega_const(0, 0, Regime::Flat);
        s.mass_kind = MassKind::Finite;
        s.mass = mass_of(36, 3, 0);
        s.provenance = "repulsive background solution u = 12 alpha^{-1/2} c^{-3}; u^2 r^3 decays like r^{-3}, "
                       "so the mass is finite although the reference lists it as infinite";
        out.push_back(std::move(s));
    }
    {
        Solution s = base_entry("BG_FLAT_N3_D5", Regime::Flat, 5, Family::FlatPowerC, -3, law(60, 0));
        s.V = mono(c, -15, -4, 0, 0, -1);
        s.rho = mono(c, -360, -8, 0, 0, -1);
        s.omega = omega_const(0, 0, Regime::Flat);
        s.mass_kind = MassKind::Finite;
        s.mass = mass_of(Rational(45, 4), 4, 0, 1);
        s.provenance = "repulsive background solution u = 60^{1/2} alpha^{-1/2} c^{-3}; finite mass";
        out.push_back(std::move(s));
    }
    {
        Solution s = base_entry("BG_FLAT_N4_D4", Regime::Flat, 4, Family::FlatPowerC, -4, law(-576, 0));
        s.V = mono(c, 8, -2, 0, 0, -1) + mono(c, -24, -4, 0, 0, -1);
        s.rho = mono(c, 256, -6, 0, 0, -1);
        s.omega = omega_const(0, 0, Regime::Flat);
        s.mass_kind = MassKind::Finite;
        s.mass = mass_of(48, 3, 0);
        s.provenance = "attractive background solution u = 24(-alpha)^{-1/2} c^{-4}; rho = 256 alpha^{-1} c^{-6} "
                       "(the reference form 256(-alpha)^{-1} c^{-6} has the opposite sign)";
        out.push_back(std::move(s));
    }

    const Basis cb = Basis::CurvedC;
    // n = -2: omega = 2(D-3)(-kappa), rho = -12(D-3)(-kappa)^2 alpha^{-1} C^{-2}
    const Rational n2_mass[] = {24, 12, 12, 24};
    const Rational n2_kappa[] = {Rational(3, 2), Rational(1), Rational(1, 2), Rational(0)};
    for (int d = 1; d <= 6; ++d) {
        Solution s = base_entry("BG_HYP_N2_D" + std::to_string(d), Regime::Hyperbolic, d, Family::CurvedPowerC, -2,
                                law(-36, 2));
        s.V = mono(cb, -6, -2, 0, 1, -1);
        s.rho = mono(cb, Rational(-12 * (d - 3)), -2, 0, 2, -1);
        s.omega = omega_const(2 * (d - 3), 1, Regime::Hyperbolic);
        if (d <= 4) {
            s.mass_kind = MassKind::Finite;
            s.mass = mass_of(n2_mass[d - 1], d - 1, n2_kappa[d - 1]);
        } else {
            s.mass_kind = MassKind::Infinite;
        }
        s.provenance = d >= 3 ? "hyperbolic background C^{-2} solution, attractive, rho >= 0 (zero at D = 3)"
                              : "hyperbolic background C^{-2} solution, attractive with rho < 0 (not a physical "
                                "gravitational source)";
        out.push_back(std::move(s));
    }
    // n = -1: A^2 = 4(3-D)(-kappa)^2/alpha, omega = (D-2)(-kappa), rho = -12(-kappa)^2 alpha^{-1} C^{-4}
    for (int d : {2, 4, 5, 6}) {
        Solution s = base_entry("BG_HYP_N1_D" + std::to_string(d), Regime::Hyperbolic, d, Family::CurvedPowerC, -1,
                                law(Rational(-4 * (d - 3)), 2));
        s.V = mono(cb, -2, -2, 0, 1, -1);
        s.rho = mono(cb, -12, -4, 0, 2, -1);
        s.omega = omega_const(d - 2, 1, Regime::Hyperbolic);
        if (d < 3) {
            s.mass_kind = MassKind::Finite;
            s.mass = mass_of(4, 1, 1);
            s.provenance = "hyperbolic background C^{-1} solution, repulsive, rho < 0 (negative charge)";
        } else {
            s.mass_kind = MassKind::Infinite;
            s.provenance = "hyperbolic background C^{-1} solution, attractive, rho > 0; infinite mass";
        }
        out.push_back(std::move(s));
    }
    {
        Solution s = base_entry("BG_1D_SECH", Regime::Hyperbolic, 1, Family::CurvedPowerC, -1, law(8, 2));
        s.V = mono(cb, -2, -2, 0, 1, -1);
        s.rho = mono(cb, -12, -4, 0, 2, -1);
        s.omega = omega_const(-1, 1, Regime::Hyperbolic);
        s.mass_kind = MassKind::Finite;
        s.mass = mass_of(8, 0, Rational(3, 2));
        s.provenance = "D = 1 with kappa = -1/R^2: u = 8^{1/2} alpha^{-1/2} R^{-2} sech(r/R); "
                       "mass 16/(R^3 alpha) equals the integral of -rho";
        out.push_back(std::move(s));
    }
    {
        Solution s;
        s.id = "SPH_TRIVIAL";
        s.regime = Regime::Spherical;
        s.dim = 3;
        s.family = Family::CurvedPowerC;
        s.n = 0;
        s.amp_law.free = true;
        s.alpha_sign = AlphaSign::Any;
        s.u = mono(cb, 1, 0, 0, 0, 0, 1);
        s.V = RadialExpr(cb);
        s.rho = mono(cb, -1, 0, 0, 0, 0, 2);
        s.omega = omega_const(0, 0, Regime::Spherical);
        s.mass_kind = MassKind::Finite;
        GradedConst m;
        m.coeff = 1;
        m.sphere_dim = 3;
        m.kappa_pow = Rational(-3, 2);
        m.amp_pow = 2;
        m.base = GradeBase::Magnitude;
        s.mass = m;
        s.provenance = "trivial hypersphere solution u^2 = -rho = const, V = 0, free amplitude";
        out.push_back(std::move(s));
    }
}

std::vector<Solution> build_catalog()
{
    std::vector<Solution> out;
    add_flat_entries(out);
    add_curved_homogeneous(out);
    add_background_entries(out);
    for (const Solution& s : out) {
        const std::string problem = symbolic_check(s);
        if (!problem.empty())
            throw std::logic_error("catalog entry " + s.id + " fails: " + problem);
    }
    return out;
}

} // namespace

RadialExpr poisson_defect(const Solution& sol)
{
    RadialExpr defect = -laplacian(sol.V, sol.dim) - sol.u * sol.u;
    if (sol.rho)
        defect -= *sol.rho;
    if (!sol.amp_law.free)
        defect = substitute_amplitude(defect, sol.amp_law.q, sol.amp_law.kappa_pow);
    return defect;
}

std::string symbolic_check(const Solution& sol)
{
    const Basis basis = sol.basis();
    if (sol.V.basis() != basis || (sol.rho && sol.rho->basis() != basis))
        return "u, V and rho use different bases";
    const RadialExpr ratio = expr_div_exact(laplacian(sol.u, sol.dim), sol.u);
    const RadialExpr lhs = mono(basis, 1, 0, 0, 0, 1) * sol.V - omega_expr(basis, sol.omega);
    if (!(lhs == ratio))
        return "alpha V - omega differs from Delta u / u";
    if (!poisson_defect(sol).empty())
        return "-Delta V - u^2 - rho does not vanish";
    return {};
}

const std::vector<Solution>& catalog_all()
{
    static const std::vector<Solution> entries = build_catalog();
    return entries;
}

std::vector<Solution> catalog_list(const CatalogFilter& filter)
{
    std::vector<Solution> out;
    for (const Solution& s : catalog_all()) {
        if (filter.regime && s.regime != *filter.regime)
            continue;
        if (filter.dim && s.dim != *filter.dim)
            continue;
        if (filter.alpha_sign && s.alpha_sign != AlphaSign::Any && s.alpha_sign != *filter.alpha_sign)
            continue;
        if (filter.finite_mass && s.finite_mass() != *filter.finite_mass)
            continue;
        if (filter.background && s.background() != *filter.background)
            continue;
        out.push_back(s);
    }
    return out;
}

const Solution& catalog_get(std::string_view id)
{
    for (const Solution& s : catalog_all())
        if (s.id == id)
            return s;
    throw UnknownSolution("unknown solution id: " + std::string(id));
}

std::optional<double> closed_form_mass(const Solution& sol, double kappa, double alpha, double amp_sq)
{
    if (!sol.mass)
        return std::nullopt;
    double value = sol.mass->evaluate(kappa, alpha, amp_sq);
    if (sol.scale != 1.0)
        value *= std::pow(sol.scale, sol.dim - 4);
    return value;
}

Solution scale_flat_solution(const Solution& sol, double a)
{
    if (sol.regime != Regime::Flat)
        throw NotScalable(sol.id + ": curved solutions have no scaling family");
    if (sol.background())
        throw NotScalable(sol.id + ": the background density fixes the scale");
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("scale factor must be positive and finite");
    Solution out = sol;
    out.scale *= a;
    return out;
}

ObstructionReport compactness_obstruction_check(const Solution& sol, double kappa, double alpha, double amp_sq)
{
    if (sol.regime != Regime::Spherical)
        throw std::invalid_argument(sol.id + " is not a spherical solution");
    const Space space = Space::spherical(kappa, sol.dim);
    ObstructionReport report;
    report.has_singularity = !sol.singular.empty();
    if (!sol.background()) {
        report.consistent = report.has_singularity;
        report.verdict = report.consistent ? "CONSISTENT" : "CONTRADICTION";
        return report;
    }
    const double a2 = sol.amp_law.free ? amp_sq : sol.amp_law.amp_sq(kappa, alpha);
    const RadialExpr charge = sol.u * sol.u + *sol.rho;
    const auto f = [&](double r) {
        return expr_eval(charge, space, r, alpha, a2) * volume_weight(space, r);
    };
    const double r_max = radial_domain(space).r_max;
    double total = 0.0;
    if (!charge.empty()) {
        const IntegralResult res = integrate_radial(f, 0.0, r_max);
        if (!res.converged()) {
            report.consistent = false;
            report.verdict = "DIVERGENT";
            return report;
        }
        total = res.value * sphere_area(sol.dim);
    }
    report.charge_integral = total;
    report.consistent = std::abs(total) <= 1e-10;
    report.verdict = report.consistent ? "CONSISTENT" : "CONTRADICTION";
    return report;
}

Solution solution_from_hit(const DerivationHit& hit)
{
    Solution s;
    s.id = "hit:" + std::string(to_string(hit.ansatz.family)) + ":n=" + std::to_string(hit.ansatz.n)
         + ":D=" + std::to_string(hit.dim) + ":" + std::string(to_string(hit.regime)) + ":"
         + std::string(to_string(hit.mode));
    s.regime = hit.regime;
    s.dim = hit.dim;
    s.family = hit.ansatz.family;
    s.n = hit.ansatz.n;
    s.u = hit.u;
    s.V = hit.V;
    if (hit.mode == SearchMode::Background)
        s.rho = hit.rho;
    s.omega = hit.omega;
    s.alpha_sign = hit.alpha_sign;
    s.amp_law = hit.amp_law;
    if (hit.ansatz.n < 0) {
        switch (hit.ansatz.family) {
        case Family::FlatPowerC: break;
        case Family::FlatPowerR: s.singular.origin = true; break;
        case Family::CurvedPowerC: s.singular.equator = hit.regime == Regime::Spherical; break;
        case Family::CurvedPowerS:
            s.singular.origin = true;
            s.singular.antipode = hit.regime == Regime::Spherical;
            break;
        }
    }
    s.mass_kind = MassKind::Unknown;
    s.provenance = hit.notes;
    return s;
}

} // namespace csp
