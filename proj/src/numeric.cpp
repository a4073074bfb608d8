#include "csp/numeric.hpp"

#include "csp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace csp {

namespace {

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

SolutionField::SolutionField(const Solution& sol, double kappa, double alpha, double amp_sq)
    : sol_(sol),
      space_(Space::make(sol.regime, kappa, sol.dim)),
      alpha_(alpha),
      amp_sq_(amp_sq),
      omega_(0.0),
      u_(RadialExpr(sol.basis()), space_, alpha, 1.0),
      du_(RadialExpr(sol.basis()), space_, alpha, 1.0),
      V_(RadialExpr(sol.basis()), space_, alpha, 1.0)
{
    if (!std::isfinite(alpha) || !alpha_admissible(sol.alpha_sign, alpha))
        throw SignIncompatible(sol.id + " requires alpha "
                               + (sol.alpha_sign == AlphaSign::Attractive   ? "< 0"
                                  : sol.alpha_sign == AlphaSign::Repulsive ? "> 0"
                                                                            : "!= 0")
                               + " (A^2 > 0), got alpha = " + fmt(alpha));
    if (sol.amp_law.free) {
        if (!(amp_sq >= 0.0) || !std::isfinite(amp_sq))
            throw std::invalid_argument("A^2 must be finite and nonnegative");
    } else {
        amp_sq_ = sol.amp_law.amp_sq(kappa, alpha);
    }
    omega_ = sol.omega.value.evaluate(kappa, alpha, amp_sq_) / (sol.scale * sol.scale);
    u_ = NumericExpr(sol.u, space_, alpha, amp_sq_);
    du_ = NumericExpr(derivative(sol.u), space_, alpha, amp_sq_);
    V_ = NumericExpr(sol.V, space_, alpha, amp_sq_);
    if (sol.rho)
        rho_.emplace(*sol.rho, space_, alpha, amp_sq_);
    singular_ = singular_radii(sol.singular, space_);
}

double SolutionField::eval(const NumericExpr& e, double r, int weight) const
{
    if (sol_.scale == 1.0)
        return e(r);
    return std::pow(sol_.scale, -weight) * e(r / sol_.scale);
}

double SolutionField::u(double r) const { return eval(u_, r, 2); }
double SolutionField::du(double r) const { return eval(du_, r, 3); }
double SolutionField::V(double r) const { return eval(V_, r, 2); }
double SolutionField::rho(double r) const { return rho_ ? eval(*rho_, r, 4) : 0.0; }

Grid make_grid(double lo, double hi, int count, double h, bool geometric)
{
    if (!(hi > lo) || count < 2)
        throw GridError("grid needs lo < hi and at least two points");
    Grid g;
    g.h = h;
    g.r.resize(count);
    const bool geo = geometric && lo > 0.0;
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        g.r[i] = geo ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    g.r.back() = hi;
    return g;
}

Grid default_grid(const SolutionField& field, double h)
{
    const Space& space = field.space();
    const Solution& sol = field.solution();
    if (space.regime() != Regime::Spherical) {
        const double lo = sol.singular.origin ? 1.0 : 0.1;
        return make_grid(lo * sol.scale, 10.0 * sol.scale, 2000, h * sol.scale, true);
    }
    const double unit = 1.0 / space.rate();
    const double margin = 0.7 * unit;
    const double edge = 0.1 * unit;
    const double r_max = radial_domain(space).r_max;
    std::vector<std::pair<double, double>> pieces;
    double lo = sol.singular.origin ? margin : edge;
    if (sol.singular.equator) {
        const double eq = 0.5 * r_max;
        pieces.emplace_back(lo, eq - margin);
        lo = eq + margin;
    }
    pieces.emplace_back(lo, sol.singular.antipode ? r_max - margin : r_max - edge);
    Grid g;
    g.h = h;
    const int per = 2000 / static_cast<int>(pieces.size());
    for (const auto& [a, b] : pieces) {
        const Grid part = make_grid(a, b, per, h, false);
        g.r.insert(g.r.end(), part.r.begin(), part.r.end());
    }
    return g;
}

void validate_grid(const Grid& grid, const SolutionField& field)
{
    const RadialDomain dom = radial_domain(field.space());
    if (!(grid.h > 0.0))
        throw GridError("grid step must be positive");
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
        const double r = grid.r[i];
        if (!(r >= dom.r_min) || !(r <= dom.r_max))
            throw GridError("grid point r = " + fmt(r) + " is outside the radial domain");
        if (i > 0 && !(r > grid.r[i - 1]))
            throw GridError("grid must be strictly increasing");
        for (double s : field.singular())
            if (std::abs(r - s) < 10.0 * grid.h)
                throw GridError("grid point r = " + fmt(r) + " is within 10h of the singular radius r = " + fmt(s));
    }
}

double fd_laplacian(const std::function<double(double)>& f, const Space& space, double r, double h)
{
    const double r_max = radial_domain(space).r_max;
    const int d = space.dim();
    if (r == 0.0) {
        // even extension: Delta f(0) = D f''(0)
        return d * 2.0 * (f(h) - f(0.0)) / (h * h);
    }
    double d1;
    double d2;
    if (r - h > 0.0 && r + h < r_max) {
        const double fp = f(r + h);
        const double f0 = f(r);
        const double fm = f(r - h);
        d2 = (fp - 2.0 * f0 + fm) / (h * h);
        d1 = (fp - fm) / (2.0 * h);
    } else {
        const double s = r - h > 0.0 ? -1.0 : 1.0;
        const double f0 = f(r);
        const double f1 = f(r + s * h);
        const double f2 = f(r + 2 * s * h);
        const double f3 = f(r + 3 * s * h);
        d2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
        d1 = s * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    }
    if (d == 1)
        return d2;
    return d2 + (d - 1) * metric_cot(space, r) * d1;
}

Residuals fd_residual(const SolutionField& field, const Grid& grid, double perturb)
{
    validate_grid(grid, field);
    const Space& space = field.space();
    const auto u = [&](double r) { return perturb * field.u(r); };
    const auto V = [&](double r) { return field.V(r); };
    Residuals out;
    for (double r : grid.r) {
        const double u0 = u(r);
        const double v0 = V(r);
        const double norm = std::max(std::abs(u0), 1.0);
        const double schr = -fd_laplacian(u, space, r, grid.h) + field.alpha() * v0 * u0 - field.omega() * u0;
        const double pois = -fd_laplacian(V, space, r, grid.h) - u0 * u0 - field.rho(r);
        out.schrodinger_max = std::max(out.schrodinger_max, std::abs(schr) / norm);
        out.poisson_max = std::max(out.poisson_max, std::abs(pois) / norm);
    }
    return out;
}

namespace {

/// Integral of g over the whole radial domain, split at interior singular radii.
Functional integrate_domain(const std::function<double(double)>& g, const SolutionField& field,
                            const QuadOptions& options)
{
    const RadialDomain dom = radial_domain(field.space());
    std::vector<double> cuts{dom.r_min};
    for (double s : field.singular())
        if (s > dom.r_min && s < dom.r_max)
            cuts.push_back(s);
    cuts.push_back(dom.r_max);
    Functional out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const IntegralResult part = integrate_radial(g, cuts[i], cuts[i + 1], options);
        if (!part.converged()) {
            out.status = IntegralStatus::Divergent;
            out.value = std::numeric_limits<double>::infinity();
            out.locus = part.locus;
            return out;
        }
        out.value += part.value;
    }
    return out;
}

} // namespace

MassResult mass(const SolutionField& field, const QuadOptions& options)
{
    const Space& space = field.space();
    const auto g = [&](double r) {
        const double u = field.u(r);
        return u * u * volume_weight(space, r);
    };
    const Functional radial = integrate_domain(g, field, options);
    MassResult out;
    out.status = radial.status;
    out.locus = radial.locus;
    out.radial = radial.value;
    out.value = radial.divergent() ? radial.value : sphere_area(space.dim()) * radial.value;
    return out;
}

double mass_in_convention(const MassResult& m, MassConvention convention)
{
    return convention == MassConvention::Full ? m.value : m.radial;
}

PoissonInverse::PoissonInverse(std::function<double(double)> f, const Space& space, const QuadOptions& options)
    : f_(std::move(f)), space_(space), options_(options)
{
    if (space.regime() == Regime::Spherical)
        throw DomainError("Poisson inversion with decay at infinity needs a non-compact space");
    const bool flat = space.regime() == Regime::Flat;
    const double unit = flat ? 1.0 : 1.0 / space.rate();
    // sinh^{D-1} overflows past (D-1) rate r ~ 709
    const double cap = flat ? 1e8 : 600.0 * unit / std::max(1, space.dim() - 1);
    const double ratio = 1.005;
    nodes_.push_back(0.0);
    for (double s = 1e-3 * unit; s < 64.0 * unit; s *= ratio)
        nodes_.push_back(s);
    nodes_.push_back(64.0 * unit);
    m_.push_back(0.0);
    dm_.push_back(0.0);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        m_.push_back(m_[i - 1] + segment_integral(nodes_[i - 1], nodes_[i]));
        dm_.push_back(f_(nodes_[i]) * weight(nodes_[i]));
    }
    // extend until the charge left beyond the last node is negligible
    while (nodes_.back() < cap) {
        const double s = nodes_.back();
        if (std::abs(dm_.back() * s) <= 1e-3 * options_.rel_tol * std::abs(m_.back()))
            break;
        const double next = std::min(s * ratio, cap);
        m_.push_back(m_.back() + segment_integral(s, next));
        nodes_.push_back(next);
        dm_.push_back(f_(next) * weight(next));
        if (!std::isfinite(m_.back()))
            break;
    }
    const double top = nodes_.back();
    const std::size_t n = nodes_.size();

    const auto fw = [this](double s) { return f_(s) * weight(s); };
    const IntegralResult rest = integrate_radial(fw, top, std::numeric_limits<double>::infinity(), options_);
    if (!rest.converged()) {
        divergent_ = true;
        return;
    }
    total_ = m_.back() + rest.value;
    // charge beyond the last node below tolerance: M is constant out there
    settled_ = std::abs(rest.value) <= options_.rel_tol * std::abs(total_);

    const auto mw = [this](double s) { return cumulative(s) / weight(s); };
    const double tail = outer_tail(top);
    if (!std::isfinite(tail)) {
        divergent_ = true;
        return;
    }
    suffix_.assign(n, 0.0);
    suffix_[n - 1] = tail;
    for (std::size_t k = n - 1; k-- > 0;)
        suffix_[k] = suffix_[k + 1] + gauss_kronrod(mw, nodes_[k], nodes_[k + 1], options_.rel_tol);
}

double PoissonInverse::outer_tail(double r) const
{
    const double inf = std::numeric_limits<double>::infinity();
    IntegralResult res;
    if (settled_) {
        res = integrate_radial([this](double s) { return 1.0 / weight(s); }, r, inf, options_);
        if (res.converged())
            res.value *= total_;
    } else {
        res = integrate_radial([this](double s) { return cumulative(s) / weight(s); }, r, inf, options_);
    }
    return res.converged() ? res.value : inf;
}

double PoissonInverse::weight(double r) const
{
    return volume_weight(space_, r);
}

double PoissonInverse::segment_integral(double a, double b) const
{
    const auto fw = [this](double s) { return f_(s) * weight(s); };
    return gauss_kronrod(fw, a, b, options_.rel_tol);
}

double PoissonInverse::cumulative(double r) const
{
    if (r <= 0.0)
        return 0.0;
    const double top = nodes_.back();
    if (r >= top) {
        if (settled_)
            return total_;
        return m_.back() + (r > top ? segment_integral(top, r) : 0.0);
    }
    if (r <= nodes_[1])
        return segment_integral(0.0, r);
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
    const std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    const double a = nodes_[k];
    const double b = nodes_[k + 1];
    const double h = b - a;
    const double t = (r - a) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * m_[k] + h10 * h * dm_[k] + h01 * m_[k + 1] + h11 * h * dm_[k + 1];
}

double PoissonInverse::operator()(double r) const
{
    if (divergent_)
        return std::numeric_limits<double>::infinity();
    const auto mw = [this](double s) { return cumulative(s) / weight(s); };
    if (r >= nodes_.back())
        return outer_tail(r);
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
    const std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
    return gauss_kronrod(mw, r, nodes_[k], options_.rel_tol) + suffix_[k];
}

PohozaevFunctionals pohozaev_functionals(const SolutionField& field, const QuadOptions& options)
{
    const Space& space = field.space();
    if (space.regime() != Regime::Flat || space.dim() <= 2)
        throw std::invalid_argument("Pohozaev identities are derived for flat space with D > 2");
    const double area = sphere_area(space.dim());
    const auto scaled = [area](Functional f) {
        if (!f.divergent())
            f.value *= area;
        return f;
    };
    PohozaevFunctionals out;
    out.T = scaled(integrate_domain(
        [&](double r) {
            const double d = field.du(r);
            return d * d * volume_weight(space, r);
        },
        field, options));
    out.N = scaled(integrate_domain(
        [&](double r) {
            const double u = field.u(r);
            return u * u * volume_weight(space, r);
        },
        field, options));
    const auto f = [&field](double r) {
        const double u = field.u(r);
        return u * u;
    };
    PoissonInverse inverse(f, space, options);
    if (inverse.divergent() || out.N.divergent()) {
        out.Q.status = out.Q_check.status = IntegralStatus::Divergent;
        out.Q.value = out.Q_check.value = std::numeric_limits<double>::infinity();
        out.Q.locus = out.Q_check.locus = out.N.divergent() ? out.N.locus : "large-r";
        return out;
    }
    out.Q = scaled(integrate_domain([&](double r) { return f(r) * inverse(r) * volume_weight(space, r); }, field,
                                    options));
    out.Q_check = scaled(integrate_domain(
        [&](double r) {
            const double m = inverse.cumulative(r);
            return m * m / volume_weight(space, r);
        },
        field, options));
    return out;
}

PohozaevReport pohozaev_check(const SolutionField& field, const QuadOptions& options)
{
    PohozaevReport rep;
    rep.functionals = pohozaev_functionals(field, options);
    const auto& fn = rep.functionals;
    if (fn.T.divergent() || fn.N.divergent() || fn.Q.divergent()) {
        rep.divergent = true;
        rep.defect = std::numeric_limits<double>::infinity();
        return rep;
    }
    const double d = field.space().dim();
    const double a = field.alpha();
    const double w = field.omega();
    const double T = fn.T.value;
    const double N = fn.N.value;
    const double Q = fn.Q.value;
    rep.identity[0] = T - w * N + a * Q;
    rep.identity[1] = (d - 2) * T - d * w * N + 0.5 * (d + 2) * a * Q;
    rep.identity[2] = 4 * T + (d - 2) * a * Q;
    double worst = 0.0;
    for (double v : rep.identity)
        worst = std::max(worst, std::abs(v));
    rep.defect = T > 0.0 ? worst / T : (worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    return rep;
}

bool pohozaev_alpha_feasible(double alpha, int dim)
{
    return (dim - 2) * alpha < 0.0;
}

namespace {

std::optional<double> order_of(double coarse, double fine, const Tolerances& tol)
{
    if (coarse < tol.order_floor || fine < tol.order_floor)
        return std::nullopt;
    return std::log2(coarse / fine);
}

} // namespace

VerificationReport verify(const Solution& sol, double kappa, double alpha, double amp_sq, const VerifyOptions& options)
{
    const Tolerances& tol = options.tolerances;
    VerificationReport rep;
    rep.id = sol.id;
    rep.kappa = kappa;
    rep.alpha = alpha;
    rep.tolerances = tol;
    const SolutionField field(sol, kappa, alpha, amp_sq);
    rep.amp_sq = field.amp_sq();

    const std::string sym = symbolic_check(sol);
    rep.symbolic_ok = sym.empty();
    if (!rep.symbolic_ok)
        rep.failures.push_back("symbolic: " + sym);

    Grid grid = options.grid ? *options.grid : default_grid(field, tol.h);
    grid.h = tol.h;
    rep.grid_lo = grid.r.front();
    rep.grid_hi = grid.r.back();
    rep.grid_count = static_cast<int>(grid.r.size());
    rep.residuals = fd_residual(field, grid);
    if (!(rep.residuals.schrodinger_max <= tol.residual))
        rep.failures.push_back("schrodinger residual " + fmt(rep.residuals.schrodinger_max));
    if (!(rep.residuals.poisson_max <= tol.residual))
        rep.failures.push_back("poisson residual " + fmt(rep.residuals.poisson_max));

    Grid coarse = grid;
    coarse.h = tol.h_coarse;
    Grid fine = grid;
    fine.h = tol.h_fine;
    const Residuals rc = fd_residual(field, coarse);
    const Residuals rf = fd_residual(field, fine);
    rep.schrodinger_order = order_of(rc.schrodinger_max, rf.schrodinger_max, tol);
    rep.poisson_order = order_of(rc.poisson_max, rf.poisson_max, tol);
    for (const auto& [name, order] : {std::pair{"schrodinger", rep.schrodinger_order},
                                      std::pair{"poisson", rep.poisson_order}})
        if (order && std::abs(*order - tol.order_target) > tol.order_tol)
            rep.failures.push_back(std::string(name) + " convergence order " + fmt(*order));

    rep.mass_numeric = mass(field, options.quad);
    switch (sol.mass_kind) {
    case MassKind::Finite: {
        rep.mass_expected = closed_form_mass(sol, kappa, alpha, rep.amp_sq);
        if (rep.mass_numeric.divergent()) {
            rep.failures.push_back("mass diverges (" + rep.mass_numeric.locus + ") but a closed form is recorded");
            break;
        }
        const double got = mass_in_convention(rep.mass_numeric, sol.mass_convention);
        rep.mass_rel_error = std::abs(got - *rep.mass_expected) / std::abs(*rep.mass_expected);
        if (!(*rep.mass_rel_error <= tol.mass_rel))
            rep.failures.push_back("mass relative error " + fmt(*rep.mass_rel_error));
        break;
    }
    case MassKind::Infinite:
        if (!rep.mass_numeric.divergent())
            rep.failures.push_back("mass converges to " + fmt(rep.mass_numeric.value) + " but is recorded as infinite");
        break;
    case MassKind::Unknown: break;
    }

    if (sol.regime == Regime::Flat && !sol.background() && sol.dim > 2 && sol.finite_mass()) {
        const PohozaevReport p = pohozaev_check(field, options.quad);
        rep.pohozaev_defect = p.defect;
        if (!(p.defect <= tol.pohozaev))
            rep.failures.push_back("pohozaev defect " + fmt(p.defect));
    }
    rep.passed = rep.failures.empty();
    return rep;
}

} // namespace csp
