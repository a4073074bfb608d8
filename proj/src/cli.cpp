#include "csp/cli.hpp"

#include "csp/catalog.hpp"
#include "csp/derivation.hpp"
#include "csp/errors.hpp"
#include "csp/numeric.hpp"
#include "csp/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

namespace csp {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(const std::optional<double>& v)
{
    return v ? num(*v) : std::string();
}

/// Rows of text cells with a header, printed as CSV or an aligned table.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostream& out, const std::string& format) const
    {
        if (format == "csv") {
            print_csv_row(out, header);
            for (const auto& row : rows)
                print_csv_row(out, row);
            return;
        }
        std::vector<std::size_t> width(header.size(), 0);
        for (std::size_t c = 0; c < header.size(); ++c) {
            width[c] = header[c].size();
            for (const auto& row : rows)
                width[c] = std::max(width[c], row[c].size());
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string text;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                text += cells[c];
                if (c + 1 < cells.size())
                    text += std::string(width[c] - cells[c].size() + 2, ' ');
            }
            out << text << "\n";
        };
        line(header);
        for (const auto& row : rows)
            line(row);
    }

private:
    static void print_csv_row(std::ostream& out, const std::vector<std::string>& cells)
    {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const bool quote = cells[c].find_first_of(",\"\n") != std::string::npos;
            if (quote) {
                std::string escaped;
                for (char ch : cells[c])
                    escaped += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                out << '"' << escaped << '"';
            } else {
                out << cells[c];
            }
            out << (c + 1 < cells.size() ? "," : "\n");
        }
    }
};

struct Globals {
    std::string format = "json";
    std::optional<double> kappa;
    std::optional<double> alpha;
    std::optional<double> radius;
    std::optional<double> amp_sq;
    std::optional<double> rel_tol;
};

struct Params {
    double kappa = 0.0;
    double alpha = -1.0;
    double amp_sq = 1.0;
};

void require_finite(const std::optional<double>& v, const char* name)
{
    if (v && !std::isfinite(*v))
        throw UsageError(std::string(name) + " must be finite");
}

void check_globals(const Globals& g)
{
    require_finite(g.kappa, "--kappa");
    require_finite(g.alpha, "--alpha");
    require_finite(g.radius, "--R");
    require_finite(g.amp_sq, "--amp-sq");
    require_finite(g.rel_tol, "--rel-tol");
    if (g.radius && !(*g.radius > 0.0))
        throw UsageError("--R must be positive");
    if (g.rel_tol && !(*g.rel_tol > 0.0))
        throw UsageError("--rel-tol must be positive");
    if (g.alpha && *g.alpha == 0.0)
        throw UsageError("--alpha must be nonzero");
}

Params resolve(const Solution& sol, const Globals& g)
{
    Params p;
    if (g.kappa) {
        p.kappa = *g.kappa;
    } else {
        const double R = g.radius.value_or(1.0);
        switch (sol.regime) {
        case Regime::Flat: p.kappa = 0.0; break;
        case Regime::Hyperbolic: p.kappa = -1.0 / (R * R); break;
        case Regime::Spherical: p.kappa = 1.0 / (R * R); break;
        }
    }
    // Space::make rejects a curvature of the wrong sign
    (void)Space::make(sol.regime, p.kappa, sol.dim);
    p.alpha = g.alpha.value_or(sol.alpha_sign == AlphaSign::Repulsive ? 1.0 : -1.0);
    if (g.amp_sq) {
        if (!sol.amp_law.free)
            throw UsageError("--amp-sq applies only to free-amplitude solutions; " + sol.id
                             + " fixes A^2 through its amplitude law");
        p.amp_sq = *g.amp_sq;
    }
    return p;
}

QuadOptions quad_options(const Globals& g)
{
    QuadOptions q;
    if (g.rel_tol)
        q.rel_tol = *g.rel_tol;
    return q;
}

Solution lookup(const std::string& id, const std::optional<double>& scale)
{
    Solution sol = catalog_get(id);
    if (scale)
        sol = scale_flat_solution(sol, *scale);
    return sol;
}

std::string mass_kind_name(MassKind kind)
{
    switch (kind) {
    case MassKind::Finite: return "finite";
    case MassKind::Infinite: return "infinite";
    case MassKind::Unknown: return "unknown";
    }
    return "?";
}

Regime default_regime(Family family)
{
    return (family == Family::FlatPowerC || family == Family::FlatPowerR) ? Regime::Flat : Regime::Hyperbolic;
}

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

GridSpec parse_grid_spec(const std::string& text)
{
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos)
        throw UsageError("grid must be lo:hi:count, got \"" + text + "\"");
    GridSpec g;
    try {
        std::size_t used = 0;
        const std::string lo = text.substr(0, a), hi = text.substr(a + 1, b - a - 1), count = text.substr(b + 1);
        g.lo = std::stod(lo, &used);
        if (used != lo.size()) throw std::invalid_argument(lo);
        g.hi = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(hi);
        g.count = std::stoi(count, &used);
        if (used != count.size()) throw std::invalid_argument(count);
    } catch (const std::logic_error&) {
        throw UsageError("grid must be lo:hi:count, got \"" + text + "\"");
    }
    if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.count < 1 || (g.count > 1 && !(g.hi > g.lo)))
        throw UsageError("grid needs finite lo < hi and count >= 1, got \"" + text + "\"");
    if (g.count == 1 && g.hi != g.lo)
        throw UsageError("a single-point grid needs lo == hi");
    return g;
}

std::string radius_name(const Space& space, double r)
{
    if (r == 0.0)
        return "origin";
    const double equator = std::acos(-1.0) / (2.0 * space.rate());
    return std::abs(r - equator) <= 1e-12 * equator ? "equator" : "antipode";
}

int cmd_catalog(const CatalogFilter& filter, const Globals& g, std::ostream& out)
{
    const auto list = catalog_list(filter);
    if (g.format == "json") {
        Json arr = Json::array();
        for (const auto& s : list)
            arr.push_back(to_json(s));
        out << dump(arr);
        return ExitOk;
    }
    Table t{{"id", "regime", "dim", "family", "n", "alpha_sign", "mass", "background"}, {}};
    for (const auto& s : list)
        t.rows.push_back({s.id, std::string(to_string(s.regime)), std::to_string(s.dim),
                          std::string(to_string(s.family)), std::to_string(s.n),
                          std::string(to_string(s.alpha_sign)), mass_kind_name(s.mass_kind),
                          s.background() ? "yes" : "no"});
    t.print(out, g.format);
    return ExitOk;
}

struct DeriveArgs {
    std::string family;
    std::optional<std::string> regime;
    std::optional<std::string> mode;
    std::optional<std::string> n_range;
    std::optional<std::string> d_range;
    int max_rho_terms = 1;
};

int cmd_derive(const DeriveArgs& a, const Globals& g, std::ostream& out)
{
    const Family family = parse_family(a.family);
    const Regime regime = a.regime ? parse_regime(*a.regime) : default_regime(family);
    SearchMode mode = family == Family::FlatPowerR ? SearchMode::Singular : SearchMode::Homogeneous;
    if (a.mode)
        mode = parse_search_mode(*a.mode);
    const bool flat_family = family == Family::FlatPowerC || family == Family::FlatPowerR;
    if (flat_family != (regime == Regime::Flat))
        throw UsageError("family " + a.family + " cannot be used in the " + std::string(to_string(regime))
                         + " regime");
    if ((mode == SearchMode::Singular) != (family == Family::FlatPowerR))
        throw UsageError("singular mode goes with family flat-r, and flat-r only with singular mode");
    if (a.max_rho_terms < 0)
        throw UsageError("--max-rho-terms must be >= 0");
    const IntRange n = a.n_range ? parse_int_range(*a.n_range) : default_n_range(family, mode);
    const IntRange d = a.d_range ? parse_int_range(*a.d_range) : default_d_range(family, mode);
    if (d.lo < 1)
        throw UsageError("dimensions start at 1");

    std::vector<DerivationHit> hits;
    switch (mode) {
    case SearchMode::Homogeneous: hits = solve_homogeneous(family, regime, n, d); break;
    case SearchMode::Background: hits = solve_background(family, regime, n, d, a.max_rho_terms); break;
    case SearchMode::Singular: hits = solve_singular_flat(d, n); break;
    }

    if (g.format == "json") {
        Json arr = Json::array();
        for (const auto& h : hits)
            arr.push_back(to_json(h));
        out << dump(arr);
        return ExitOk;
    }
    Table t{{"family", "n", "dim", "regime", "mode", "alpha_sign", "q", "kappa_pow"}, {}};
    for (const auto& h : hits)
        t.rows.push_back({std::string(to_string(h.ansatz.family)), std::to_string(h.ansatz.n),
                          std::to_string(h.dim), std::string(to_string(h.regime)),
                          std::string(to_string(h.mode)), std::string(to_string(h.alpha_sign)),
                          to_string(h.amp_law.q), std::to_string(h.amp_law.kappa_pow)});
    t.print(out, g.format);
    return ExitOk;
}

struct VerifyArgs {
    std::optional<std::string> id;
    std::optional<std::string> hit_file;
    std::optional<double> scale;
    std::optional<double> residual_tol;
};

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out, std::istream& in)
{
    if (a.id.has_value() == a.hit_file.has_value())
        throw UsageError("verify needs exactly one of a solution id or --hit-file");
    if (a.residual_tol && !(std::isfinite(*a.residual_tol) && *a.residual_tol > 0.0))
        throw UsageError("--residual-tol must be positive");

    std::vector<Solution> sols;
    if (a.id) {
        sols.push_back(lookup(*a.id, a.scale));
    } else {
        Json j;
        try {
            if (*a.hit_file == "-") {
                j = Json::parse(in);
            } else {
                std::ifstream file(*a.hit_file);
                if (!file)
                    throw UsageError("cannot open hit file " + *a.hit_file);
                j = Json::parse(file);
            }
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(std::string("hit file is not valid JSON: ") + e.what());
        }
        sols = solutions_from_json(j);
        if (a.scale)
            for (auto& s : sols)
                s = scale_flat_solution(s, *a.scale);
    }

    VerifyOptions opts;
    opts.quad = quad_options(g);
    if (a.residual_tol)
        opts.tolerances.residual = *a.residual_tol;

    std::vector<VerificationReport> reports;
    for (const auto& s : sols) {
        const Params p = resolve(s, g);
        reports.push_back(verify(s, p.kappa, p.alpha, p.amp_sq, opts));
    }
    const bool all_passed = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });

    if (g.format == "json") {
        if (a.id) {
            out << dump(to_json(reports.front()));
        } else {
            Json arr = Json::array();
            for (const auto& r : reports)
                arr.push_back(to_json(r));
            out << dump(arr);
        }
    } else {
        Table t{{"id", "passed", "schrodinger", "poisson", "order_s", "order_p", "mass_rel_error", "failures"}, {}};
        for (const auto& r : reports) {
            std::string failures;
            for (const auto& f : r.failures)
                failures += (failures.empty() ? "" : "; ") + f;
            t.rows.push_back({r.id, r.passed ? "yes" : "no", num(r.residuals.schrodinger_max),
                              num(r.residuals.poisson_max), num(r.schrodinger_order), num(r.poisson_order),
                              num(r.mass_rel_error), failures});
        }
        t.print(out, g.format);
    }
    return all_passed ? ExitOk : ExitVerifyFailed;
}

struct SolutionArgs {
    std::string id;
    std::optional<double> scale;
};

int cmd_mass(const SolutionArgs& a, const Globals& g, std::ostream& out)
{
    const Solution sol = lookup(a.id, a.scale);
    const Params p = resolve(sol, g);
    const SolutionField field(sol, p.kappa, p.alpha, p.amp_sq);
    const MassResult m = mass(field, quad_options(g));
    const auto closed = closed_form_mass(sol, p.kappa, p.alpha, field.amp_sq());
    const double value = mass_in_convention(m, sol.mass_convention);

    if (g.format == "json") {
        Json j;
        j["id"] = sol.id;
        j["kappa"] = number_json(p.kappa);
        j["alpha"] = number_json(p.alpha);
        j["amp_sq"] = number_json(field.amp_sq());
        j["mass_convention"] = to_string(sol.mass_convention);
        j["status"] = m.divergent() ? "divergent" : "converged";
        j["divergent"] = m.divergent() ? Json(m.locus) : Json(nullptr);
        j["value"] = m.divergent() ? Json(nullptr) : number_json(value);
        j["full"] = m.divergent() ? Json(nullptr) : number_json(m.value);
        j["radial"] = m.divergent() ? Json(nullptr) : number_json(m.radial);
        j["closed_form"] = closed ? number_json(*closed) : Json(nullptr);
        out << dump(j);
        return ExitOk;
    }
    Table t{{"id", "status", "locus", "value", "convention", "closed_form"}, {}};
    t.rows.push_back({sol.id, m.divergent() ? "divergent" : "converged", m.locus,
                      m.divergent() ? "" : num(value), std::string(to_string(sol.mass_convention)), num(closed)});
    t.print(out, g.format);
    return ExitOk;
}

int cmd_pohozaev(const SolutionArgs& a, const Globals& g, std::ostream& out)
{
    const Solution sol = lookup(a.id, a.scale);
    const Params p = resolve(sol, g);
    if (sol.regime != Regime::Flat || sol.dim <= 2)
        throw UsageError("Pohozaev functionals need a flat solution with D > 2");
    const SolutionField field(sol, p.kappa, p.alpha, p.amp_sq);
    const PohozaevReport rep = pohozaev_check(field, quad_options(g));

    if (g.format == "json") {
        Json j;
        j["id"] = sol.id;
        j["kappa"] = number_json(p.kappa);
        j["alpha"] = number_json(p.alpha);
        j["omega"] = number_json(field.omega());
        j["dim"] = sol.dim;
        const Json body = to_json(rep);
        for (const auto& [key, value] : body.items())
            j[key] = value;
        j["alpha_feasible"] = pohozaev_alpha_feasible(p.alpha, sol.dim);
        out << dump(j);
        return ExitOk;
    }
    const auto& f = rep.functionals;
    auto cell = [](const Functional& x) { return x.divergent() ? "divergent:" + x.locus : num(x.value); };
    Table t{{"id", "T", "N", "Q", "Q_check", "defect"}, {}};
    t.rows.push_back({sol.id, cell(f.T), cell(f.N), cell(f.Q), cell(f.Q_check),
                      rep.divergent ? "" : num(rep.defect)});
    t.print(out, g.format);
    return ExitOk;
}

struct EvalArgs {
    std::string id;
    std::string grid = "0:10:101";
    std::optional<double> scale;
};

int cmd_eval(const EvalArgs& a, const Globals& g, std::ostream& out)
{
    const Solution sol = lookup(a.id, a.scale);
    const Params p = resolve(sol, g);
    const SolutionField field(sol, p.kappa, p.alpha, p.amp_sq);
    const GridSpec spec = parse_grid_spec(a.grid);
    const RadialDomain domain = radial_domain(field.space());
    if (spec.lo < domain.r_min || spec.hi > domain.r_max)
        throw DomainError("grid [" + num(spec.lo) + ", " + num(spec.hi) + "] leaves the radial domain ["
                          + num(domain.r_min) + ", " + num(domain.r_max) + "]");
    for (double s : field.singular())
        if (s >= spec.lo && s <= spec.hi)
            throw GridError("grid [" + num(spec.lo) + ", " + num(spec.hi) + "] reaches the singular radius r = "
                            + num(s) + " (" + radius_name(field.space(), s) + ") of " + sol.id);

    std::vector<double> r(spec.count);
    for (int i = 0; i < spec.count; ++i)
        r[i] = spec.count == 1 ? spec.lo : spec.lo + (spec.hi - spec.lo) * i / (spec.count - 1);
    if (spec.count > 1)
        r.back() = spec.hi;

    if (g.format == "json") {
        Json j;
        j["id"] = sol.id;
        j["kappa"] = number_json(p.kappa);
        j["alpha"] = number_json(p.alpha);
        j["amp_sq"] = number_json(field.amp_sq());
        j["columns"] = {"r", "u", "V", "rho"};
        Json rows = Json::array();
        for (double x : r)
            rows.push_back({number_json(x), number_json(field.u(x)), number_json(field.V(x)),
                            field.has_rho() ? number_json(field.rho(x)) : Json(nullptr)});
        j["rows"] = std::move(rows);
        out << dump(j);
        return ExitOk;
    }
    Table t{{"r", "u", "V", "rho"}, {}};
    for (double x : r)
        t.rows.push_back({num(x), num(field.u(x)), num(field.V(x)), field.has_rho() ? num(field.rho(x)) : ""});
    t.print(out, g.format);
    return ExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Exact stationary Schrodinger-Poisson solutions on constant-curvature spaces", "csp"};
    app.fallthrough();
    app.require_subcommand(1);

    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--kappa", g.kappa, "Sectional curvature");
    app.add_option("--alpha", g.alpha, "Coupling constant");
    app.add_option("-R,--R", g.radius, "Curvature radius, kappa = -+1/R^2")->excludes("--kappa");
    app.add_option("--amp-sq", g.amp_sq, "A^2 for free-amplitude solutions");
    app.add_option("--rel-tol", g.rel_tol, "Quadrature relative tolerance");

    CatalogFilter filter;
    std::optional<std::string> cat_regime, cat_sign;
    auto* cat = app.add_subcommand("catalog", "List catalog solutions");
    cat->add_option("--regime", cat_regime, "flat, hyperbolic or spherical");
    cat->add_option("--dim", filter.dim, "Dimension");
    cat->add_option("--alpha-sign", cat_sign, "attractive, repulsive or any");
    auto* finite_flag = cat->add_flag("--finite-mass", "Finite-mass entries only");
    auto* infinite_flag = cat->add_flag("--infinite-mass", "Entries without a finite mass");
    auto* homogeneous_flag = cat->add_flag("--homogeneous", "Entries without a background density");
    auto* background_flag = cat->add_flag("--background", "Entries with a background density");
    finite_flag->excludes(infinite_flag);
    homogeneous_flag->excludes(background_flag);

    DeriveArgs derive_args;
    auto* der = app.add_subcommand("derive", "Search an ansatz family for exact solutions");
    der->add_option("--family", derive_args.family, "flat-c, flat-r, curved-c or curved-s")->required();
    der->add_option("--regime", derive_args.regime, "flat, hyperbolic or spherical");
    der->add_option("--mode", derive_args.mode, "homogeneous, background or singular");
    der->add_option("-n,--n-range", derive_args.n_range, "Exponent range a..b");
    der->add_option("-D,--d-range", derive_args.d_range, "Dimension range a..b");
    der->add_option("--max-rho-terms", derive_args.max_rho_terms, "Background monomials allowed");

    VerifyArgs verify_args;
    auto* ver = app.add_subcommand("verify", "Finite-difference and quadrature verification");
    ver->add_option("id", verify_args.id, "Catalog id");
    ver->add_option("--hit-file", verify_args.hit_file, "Solution JSON file, - for stdin");
    ver->add_option("--scale", verify_args.scale, "Flat scaling parameter a");
    ver->add_option("--residual-tol", verify_args.residual_tol, "Residual tolerance");

    SolutionArgs mass_args;
    auto* mas = app.add_subcommand("mass", "Mass integral");
    mas->add_option("id", mass_args.id, "Catalog id")->required();
    mas->add_option("--scale", mass_args.scale, "Flat scaling parameter a");

    SolutionArgs poh_args;
    auto* poh = app.add_subcommand("pohozaev", "Pohozaev functionals and identities");
    poh->add_option("id", poh_args.id, "Catalog id")->required();
    poh->add_option("--scale", poh_args.scale, "Flat scaling parameter a");

    EvalArgs eval_args;
    auto* evl = app.add_subcommand("eval", "Profile of r, u, V, rho on a uniform grid");
    evl->add_option("id", eval_args.id, "Catalog id")->required();
    evl->add_option("--r", eval_args.grid, "Grid lo:hi:count");
    evl->add_option("--scale", eval_args.scale, "Flat scaling parameter a");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return ExitUsage;
    }

    try {
        check_globals(g);
        if (cat->parsed()) {
            if (cat_regime) filter.regime = parse_regime(*cat_regime);
            if (cat_sign) filter.alpha_sign = parse_alpha_sign(*cat_sign);
            if (*finite_flag) filter.finite_mass = true;
            if (*infinite_flag) filter.finite_mass = false;
            if (*homogeneous_flag) filter.background = false;
            if (*background_flag) filter.background = true;
            return cmd_catalog(filter, g, out);
        }
        if (der->parsed())
            return cmd_derive(derive_args, g, out);
        if (ver->parsed())
            return cmd_verify(verify_args, g, out, in);
        if (mas->parsed())
            return cmd_mass(mass_args, g, out);
        if (poh->parsed())
            return cmd_pohozaev(poh_args, g, out);
        if (evl->parsed())
            return cmd_eval(eval_args, g, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitUsage;
    }
    return ExitUsage;
}

} // namespace csp
