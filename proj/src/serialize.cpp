#include "csp/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace csp {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string_view to_string(MassKind kind)
{
    switch (kind) {
    case MassKind::Finite: return "FINITE";
    case MassKind::Infinite: return "INFINITE";
    case MassKind::Unknown: return "UNKNOWN";
    }
    return "?";
}

MassKind parse_mass_kind(std::string_view text)
{
    if (text == "FINITE") return MassKind::Finite;
    if (text == "INFINITE") return MassKind::Infinite;
    if (text == "UNKNOWN") return MassKind::Unknown;
    throw std::invalid_argument("unknown mass kind: " + std::string(text));
}

Json optional_number(const std::optional<double>& v)
{
    return v ? number_json(*v) : Json(nullptr);
}

Json functional_json(const Functional& f)
{
    Json j;
    j["status"] = f.divergent() ? "divergent" : "converged";
    j["value"] = f.divergent() ? Json(nullptr) : number_json(f.value);
    j["locus"] = f.locus;
    return j;
}

} // namespace

Json number_json(double value)
{
    if (!std::isfinite(value))
        return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return std::strtod(buf, nullptr);
}

Json to_json(const RadialExpr& e)
{
    Json out = Json::array();
    for (const auto& m : collect(e)) {
        Json t;
        t["coeff"] = to_string(m.coeff);
        t["base"] = m.key.base_pow;
        t["odd"] = m.key.odd_pow;
        t["kappa"] = m.key.kappa_pow;
        t["alpha"] = m.key.alpha_pow;
        t["amp"] = m.key.amp_pow;
        out.push_back(std::move(t));
    }
    return out;
}

RadialExpr expr_from_json(const Json& j, Basis basis)
{
    if (!j.is_array())
        throw std::invalid_argument("expression must be an array of monomials");
    RadialExpr e(basis);
    for (const auto& t : j) {
        TermKey key;
        key.base_pow = field(t, "base").get<int>();
        key.odd_pow = field(t, "odd").get<int>();
        key.kappa_pow = field(t, "kappa").get<int>();
        key.alpha_pow = field(t, "alpha").get<int>();
        key.amp_pow = field(t, "amp").get<int>();
        if (key.odd_pow != 0 && key.odd_pow != 1)
            throw std::invalid_argument("odd power must be 0 or 1");
        e.add_term(key, parse_rational(field(t, "coeff").get<std::string>()));
    }
    return e;
}

Json to_json(const GradedConst& c)
{
    Json j;
    j["coeff"] = to_string(c.coeff);
    j["pi"] = c.pi_pow;
    j["sphere"] = c.sphere_dim ? Json(*c.sphere_dim) : Json(nullptr);
    j["kappa"] = to_string(c.kappa_pow);
    j["alpha"] = c.alpha_pow;
    j["amp"] = c.amp_pow;
    j["grades"] = c.base == GradeBase::Signed ? "signed" : "magnitude";
    return j;
}

GradedConst graded_from_json(const Json& j)
{
    GradedConst c;
    c.coeff = parse_rational(field(j, "coeff").get<std::string>());
    c.pi_pow = field(j, "pi").get<int>();
    if (!field(j, "sphere").is_null())
        c.sphere_dim = j.at("sphere").get<int>();
    c.kappa_pow = parse_rational(field(j, "kappa").get<std::string>());
    c.alpha_pow = field(j, "alpha").get<int>();
    c.amp_pow = field(j, "amp").get<int>();
    const auto grades = field(j, "grades").get<std::string>();
    if (grades == "signed")
        c.base = GradeBase::Signed;
    else if (grades == "magnitude")
        c.base = GradeBase::Magnitude;
    else
        throw std::invalid_argument("unknown grades: " + grades);
    return c;
}

Json to_json(const AmpLaw& law)
{
    Json j;
    j["free"] = law.free;
    j["q"] = to_string(law.q);
    j["kappa"] = law.kappa_pow;
    return j;
}

AmpLaw amp_law_from_json(const Json& j)
{
    AmpLaw law;
    law.free = field(j, "free").get<bool>();
    law.q = parse_rational(field(j, "q").get<std::string>());
    law.kappa_pow = field(j, "kappa").get<int>();
    return law;
}

Json to_json(const Solution& sol)
{
    Json j;
    j["id"] = sol.id;
    j["regime"] = to_string(sol.regime);
    j["dim"] = sol.dim;
    j["basis"] = to_string(sol.basis());
    j["family"] = to_string(sol.family);
    j["n"] = sol.n;
    j["u"] = to_json(sol.u);
    j["V"] = to_json(sol.V);
    j["rho"] = sol.rho ? to_json(*sol.rho) : Json(nullptr);
    j["omega"] = to_json(sol.omega.value);
    j["omega_label"] = to_string(sol.omega.label);
    j["alpha_sign"] = to_string(sol.alpha_sign);
    j["amp_law"] = to_json(sol.amp_law);
    Json radii = Json::array();
    if (sol.singular.origin) radii.push_back("origin");
    if (sol.singular.equator) radii.push_back("equator");
    if (sol.singular.antipode) radii.push_back("antipode");
    j["singular_radii"] = std::move(radii);
    j["mass"] = sol.mass ? to_json(*sol.mass) : Json(nullptr);
    j["mass_convention"] = to_string(sol.mass_convention);
    j["mass_kind"] = to_string(sol.mass_kind);
    j["scale"] = number_json(sol.scale);
    j["provenance"] = sol.provenance;
    return j;
}

Solution solution_from_json(const Json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("solution record must be an object");
    try {
        Solution s;
        s.id = field(j, "id").get<std::string>();
        s.regime = parse_regime(field(j, "regime").get<std::string>());
        s.dim = field(j, "dim").get<int>();
        if (s.dim < 1)
            throw std::invalid_argument("dim must be >= 1");
        const Basis basis = parse_basis(field(j, "basis").get<std::string>());
        s.family = parse_family(field(j, "family").get<std::string>());
        if (family_basis(s.family) != basis)
            throw std::invalid_argument("family and basis disagree");
        s.n = field(j, "n").get<int>();
        s.u = expr_from_json(field(j, "u"), basis);
        s.V = expr_from_json(field(j, "V"), basis);
        if (!field(j, "rho").is_null())
            s.rho = expr_from_json(j.at("rho"), basis);
        s.omega.value = graded_from_json(field(j, "omega"));
        s.omega.label = parse_omega_label(field(j, "omega_label").get<std::string>());
        s.alpha_sign = parse_alpha_sign(field(j, "alpha_sign").get<std::string>());
        s.amp_law = amp_law_from_json(field(j, "amp_law"));
        for (const auto& r : field(j, "singular_radii")) {
            const auto name = r.get<std::string>();
            if (name == "origin") s.singular.origin = true;
            else if (name == "equator") s.singular.equator = true;
            else if (name == "antipode") s.singular.antipode = true;
            else throw std::invalid_argument("unknown singular radius: " + name);
        }
        if (!field(j, "mass").is_null())
            s.mass = graded_from_json(j.at("mass"));
        s.mass_convention = parse_mass_convention(field(j, "mass_convention").get<std::string>());
        s.mass_kind = parse_mass_kind(field(j, "mass_kind").get<std::string>());
        if (s.mass_kind == MassKind::Finite && !s.mass)
            throw std::invalid_argument("finite mass without a closed form");
        const auto& scale = field(j, "scale");
        s.scale = scale.is_null() ? 1.0 : scale.get<double>();
        if (!(s.scale > 0.0))
            throw std::invalid_argument("scale must be positive");
        s.provenance = field(j, "provenance").get<std::string>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed solution record: ") + e.what());
    }
}

Json to_json(const DerivationHit& hit)
{
    return to_json(solution_from_hit(hit));
}

Json to_json(const MassResult& m)
{
    Json j;
    j["status"] = m.divergent() ? "divergent" : "converged";
    j["divergent"] = m.divergent() ? Json(m.locus) : Json(nullptr);
    j["value"] = m.divergent() ? Json(nullptr) : number_json(m.value);
    j["radial"] = m.divergent() ? Json(nullptr) : number_json(m.radial);
    return j;
}

Json to_json(const VerificationReport& r)
{
    Json j;
    j["id"] = r.id;
    j["kappa"] = number_json(r.kappa);
    j["alpha"] = number_json(r.alpha);
    j["amp_sq"] = number_json(r.amp_sq);
    Json grid;
    grid["lo"] = number_json(r.grid_lo);
    grid["hi"] = number_json(r.grid_hi);
    grid["count"] = r.grid_count;
    grid["h"] = number_json(r.tolerances.h);
    j["grid"] = std::move(grid);
    j["symbolic_ok"] = r.symbolic_ok;
    Json res;
    res["schrodinger"] = number_json(r.residuals.schrodinger_max);
    res["poisson"] = number_json(r.residuals.poisson_max);
    j["residuals"] = std::move(res);
    Json order;
    order["schrodinger"] = optional_number(r.schrodinger_order);
    order["poisson"] = optional_number(r.poisson_order);
    j["order"] = std::move(order);
    Json mass = to_json(r.mass_numeric);
    mass["expected"] = optional_number(r.mass_expected);
    mass["rel_error"] = optional_number(r.mass_rel_error);
    j["mass"] = std::move(mass);
    j["pohozaev_defect"] = optional_number(r.pohozaev_defect);
    const auto& t = r.tolerances;
    Json tol;
    tol["residual"] = number_json(t.residual);
    tol["mass_rel"] = number_json(t.mass_rel);
    tol["order_target"] = number_json(t.order_target);
    tol["order_tol"] = number_json(t.order_tol);
    tol["order_floor"] = number_json(t.order_floor);
    tol["pohozaev"] = number_json(t.pohozaev);
    tol["h"] = number_json(t.h);
    tol["h_coarse"] = number_json(t.h_coarse);
    tol["h_fine"] = number_json(t.h_fine);
    j["tolerances"] = std::move(tol);
    j["failures"] = r.failures;
    j["passed"] = r.passed;
    return j;
}

Json to_json(const PohozaevReport& r)
{
    Json j;
    j["T"] = functional_json(r.functionals.T);
    j["N"] = functional_json(r.functionals.N);
    j["Q"] = functional_json(r.functionals.Q);
    j["Q_check"] = functional_json(r.functionals.Q_check);
    j["divergent"] = r.divergent;
    j["identities"] = Json::array();
    for (double v : r.identity)
        j["identities"].push_back(r.divergent ? Json(nullptr) : number_json(v));
    j["defect"] = r.divergent ? Json(nullptr) : number_json(r.defect);
    return j;
}

std::vector<Solution> solutions_from_json(const Json& j)
{
    std::vector<Solution> out;
    if (j.is_array()) {
        for (const auto& s : j)
            out.push_back(solution_from_json(s));
    } else {
        out.push_back(solution_from_json(j));
    }
    return out;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

} // namespace csp
