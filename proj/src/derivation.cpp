#include "csp/derivation.hpp"

#include "csp/errors.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace csp {

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::FlatPowerC: return "flat-c";
    case Family::CurvedPowerC: return "curved-c";
    case Family::CurvedPowerS: return "curved-s";
    case Family::FlatPowerR: return "flat-r";
    }
    return "?";
}

Family parse_family(std::string_view text)
{
    if (text == "flat-c") return Family::FlatPowerC;
    if (text == "curved-c") return Family::CurvedPowerC;
    if (text == "curved-s") return Family::CurvedPowerS;
    if (text == "flat-r") return Family::FlatPowerR;
    throw std::invalid_argument("unknown family: " + std::string(text));
}

Basis family_basis(Family family)
{
    switch (family) {
    case Family::FlatPowerC: return Basis::FlatC;
    case Family::CurvedPowerC: return Basis::CurvedC;
    case Family::CurvedPowerS: return Basis::CurvedS;
    case Family::FlatPowerR: return Basis::FlatR;
    }
    return Basis::FlatC;
}

std::string_view to_string(SearchMode mode)
{
    switch (mode) {
    case SearchMode::Homogeneous: return "homogeneous";
    case SearchMode::Background: return "background";
    case SearchMode::Singular: return "singular";
    }
    return "?";
}

SearchMode parse_search_mode(std::string_view text)
{
    if (text == "homogeneous") return SearchMode::Homogeneous;
    if (text == "background") return SearchMode::Background;
    if (text == "singular") return SearchMode::Singular;
    throw std::invalid_argument("unknown mode: " + std::string(text));
}

std::string_view to_string(OmegaLabel label)
{
    return label == OmegaLabel::Limit ? "LIMIT" : "CONVENTIONAL";
}

OmegaLabel parse_omega_label(std::string_view text)
{
    if (text == "LIMIT") return OmegaLabel::Limit;
    if (text == "CONVENTIONAL") return OmegaLabel::Conventional;
    throw std::invalid_argument("unknown omega label: " + std::string(text));
}

namespace {

int parse_int(std::string_view text)
{
    int value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw std::invalid_argument("not an integer: " + std::string(text));
    return value;
}

void check_range(IntRange range, const char* what)
{
    if (range.hi < range.lo)
        throw std::invalid_argument(std::string(what) + " range is empty");
    if (range.size() > 64)
        throw std::invalid_argument(std::string(what) + " range has more than 64 values");
}

void check_pairing(Family family, Regime regime)
{
    const bool flat_family = family == Family::FlatPowerC || family == Family::FlatPowerR;
    if (flat_family != (regime == Regime::Flat))
        throw ModeMismatch(std::string(to_string(family)) + " ansatz does not live in "
                           + std::string(to_string(regime)) + " space");
}

} // namespace

IntRange parse_int_range(std::string_view text)
{
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        const int v = parse_int(text);
        return {v, v};
    }
    IntRange r{parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
    if (r.hi < r.lo)
        throw std::invalid_argument("empty range: " + std::string(text));
    return r;
}

RadialExpr trial_function(const AnsatzFamily& ansatz)
{
    TermKey key;
    key.base_pow = ansatz.n;
    key.amp_pow = 1;
    return RadialExpr::monomial(family_basis(ansatz.family), Rational(1), key);
}

RadialExpr potential_term(const AnsatzFamily& ansatz, Regime regime, int dim)
{
    check_pairing(ansatz.family, regime);
    const RadialExpr u = trial_function(ansatz);
    return expr_div_exact(laplacian(u, dim), u);
}

Omega omega_of(const AnsatzFamily& ansatz, Regime regime, int dim)
{
    const RadialExpr ratio = potential_term(ansatz, regime, dim);
    Omega out;
    out.label = regime == Regime::Spherical ? OmegaLabel::Conventional : OmegaLabel::Limit;
    std::vector<GradedConst> parts;
    if (regime != Regime::Spherical) {
        const LimitResult lim = limit_at_infinity(ratio, regime);
        if (lim.kind == LimitResult::Kind::Finite)
            parts = lim.value;
        else
            out.label = OmegaLabel::Conventional;
    }
    if (out.label == OmegaLabel::Conventional) {
        const RadialExpr constant = constant_part(ratio);
        for (const auto& [key, coeff] : constant.terms()) {
            GradedConst g;
            g.coeff = coeff;
            g.kappa_pow = key.kappa_pow;
            parts.push_back(g);
        }
    }
    if (parts.size() > 1)
        throw BasisError("omega has mixed curvature grades");
    if (!parts.empty()) {
        out.value = parts.front();
        out.value.coeff = -out.value.coeff;
    }
    return out;
}

RadialExpr potential_V(const AnsatzFamily& ansatz, Regime regime, int dim)
{
    const RadialExpr ratio = potential_term(ansatz, regime, dim);
    RadialExpr shifted = ratio - constant_part(ratio);
    TermKey inv_alpha;
    inv_alpha.alpha_pow = -1;
    return shifted * RadialExpr::monomial(ratio.basis(), Rational(1), inv_alpha);
}

RadialExpr consistency_residual(const AnsatzFamily& ansatz, Regime regime, int dim)
{
    const RadialExpr ratio = potential_term(ansatz, regime, dim);
    const RadialExpr u = trial_function(ansatz);
    TermKey alpha;
    alpha.alpha_pow = 1;
    RadialExpr residual = RadialExpr::monomial(u.basis(), Rational(1), alpha) * u * u;
    residual += laplacian(ratio - constant_part(ratio), dim);
    return residual;
}

bool trial_is_singular(const AnsatzFamily& ansatz, Regime regime)
{
    if (ansatz.n >= 0)
        return false;
    switch (ansatz.family) {
    case Family::FlatPowerC: return false;
    case Family::CurvedPowerC: return regime == Regime::Spherical; // C vanishes on the equator
    case Family::CurvedPowerS: return true;                        // S vanishes at the origin
    case Family::FlatPowerR: return true;
    }
    return true;
}

namespace {

bool is_x_key(const TermKey& key)
{
    return key.alpha_pow == 1 && key.amp_pow == 2;
}

std::string describe(const AnsatzFamily& ansatz, Regime regime, int dim, SearchMode mode)
{
    return "engine: " + std::string(to_string(ansatz.family)) + " n=" + std::to_string(ansatz.n)
         + " D=" + std::to_string(dim) + " " + std::string(to_string(regime)) + " "
         + std::string(to_string(mode));
}

int rho_leading_sign(const RadialExpr& rho, Regime regime, AlphaSign alpha_sign)
{
    if (rho.empty())
        return 0;
    const auto& [key, coeff] = *rho.terms().begin();
    int s = sign(coeff);
    if (regime == Regime::Spherical && key.kappa_pow % 2 != 0)
        s = -s;
    if (alpha_sign == AlphaSign::Attractive && key.alpha_pow % 2 != 0)
        s = -s;
    return s;
}

} // namespace

CandidateOutcome evaluate_candidate(const AnsatzFamily& ansatz, Regime regime, int dim, SearchMode mode,
                                    int max_rho_terms)
{
    CandidateOutcome out;
    if (dim < 1)
        throw std::invalid_argument("D must be >= 1");
    if ((mode == SearchMode::Singular) != (ansatz.family == Family::FlatPowerR))
        throw ModeMismatch("flat-r is the singular-mode family and only it");
    if (mode == SearchMode::Background && trial_is_singular(ansatz, regime)) {
        out.reason = "trial function is singular";
        return out;
    }
    const RadialExpr residual = consistency_residual(ansatz, regime, dim);

    TermKey x_key;
    RadialExpr rest(residual.basis());
    for (const auto& [key, coeff] : residual.terms()) {
        if (is_x_key(key))
            x_key = key;
        else
            rest.add_term(key, coeff);
    }
    // X must cancel the single monomial sharing its radial shape
    std::optional<Monomial> target;
    RadialExpr leftover(residual.basis());
    for (const auto& [key, coeff] : rest.terms()) {
        if (key.base_pow == x_key.base_pow && key.odd_pow == x_key.odd_pow && key.amp_pow == 0) {
            if (target)
                throw BasisError("mixed grades in one radial shape");
            target = Monomial{key, coeff};
        } else {
            leftover.add_term(key, coeff);
        }
    }
    const int allowed = mode == SearchMode::Background ? max_rho_terms : 0;
    if (static_cast<int>(leftover.size()) > allowed) {
        out.reason = "residual has " + std::to_string(leftover.size()) + " uncancelled terms";
        return out;
    }
    if (!target) {
        out.zero_amplitude = true;
        out.reason = "residual vanishes only for X = 0";
        return out;
    }

    DerivationHit hit;
    hit.ansatz = ansatz;
    hit.regime = regime;
    hit.dim = dim;
    hit.mode = mode;
    hit.amp_law.q = -target->coeff;
    hit.amp_law.kappa_pow = target->key.kappa_pow;
    hit.omega = omega_of(ansatz, regime, dim);
    hit.u = trial_function(ansatz);
    hit.V = potential_V(ansatz, regime, dim);
    TermKey inv_alpha;
    inv_alpha.alpha_pow = -1;
    hit.rho = leftover * RadialExpr::monomial(leftover.basis(), Rational(-1), inv_alpha);
    hit.alpha_sign = hit.amp_law.required_sign(regime);
    hit.notes = describe(ansatz, regime, dim, mode);
    out.hit = std::move(hit);
    return out;
}

namespace {

std::vector<DerivationHit> search(Family family, Regime regime, IntRange n_range, IntRange d_range,
                                  SearchMode mode, int max_rho_terms)
{
    check_range(n_range, "n");
    check_range(d_range, "D");
    if (d_range.lo < 1)
        throw std::invalid_argument("D range must start at 1 or above");
    check_pairing(family, regime);
    std::vector<DerivationHit> hits;
    for (int d = d_range.lo; d <= d_range.hi; ++d)
        for (int n = n_range.lo; n <= n_range.hi; ++n) {
            CandidateOutcome c = evaluate_candidate({family, n}, regime, d, mode, max_rho_terms);
            if (c.hit)
                hits.push_back(std::move(*c.hit));
        }
    return hits;
}

} // namespace

std::vector<DerivationHit> solve_homogeneous(Family family, Regime regime, IntRange n_range, IntRange d_range)
{
    if (family == Family::FlatPowerR)
        throw ModeMismatch("flat-r belongs to the singular search");
    return search(family, regime, n_range, d_range, SearchMode::Homogeneous, 0);
}

std::vector<DerivationHit> solve_singular_flat(IntRange d_range, IntRange n_range)
{
    return search(Family::FlatPowerR, Regime::Flat, n_range, d_range, SearchMode::Singular, 0);
}

std::vector<DerivationHit> solve_background(Family family, Regime regime, IntRange n_range, IntRange d_range,
                                            int max_rho_terms)
{
    if (family == Family::FlatPowerR)
        throw ModeMismatch("flat-r belongs to the singular search");
    if (max_rho_terms < 0)
        throw std::invalid_argument("max_rho_terms must be >= 0");
    return search(family, regime, n_range, d_range, SearchMode::Background, max_rho_terms);
}

SignClass classify_alpha_sign(const DerivationHit& hit)
{
    SignClass out;
    out.alpha_sign = hit.amp_law.required_sign(hit.regime);
    out.rho_sign = rho_leading_sign(hit.rho, hit.regime, out.alpha_sign);
    return out;
}

SignClass classify_alpha_sign(const AnsatzFamily& ansatz, Regime regime, int dim, SearchMode mode,
                              int max_rho_terms)
{
    const CandidateOutcome c = evaluate_candidate(ansatz, regime, dim, mode, max_rho_terms);
    if (c.hit)
        return classify_alpha_sign(*c.hit);
    SignClass out;
    out.status = SignClass::Status::NoSolution;
    return out;
}

IntRange default_n_range(Family family, SearchMode mode)
{
    if (mode == SearchMode::Singular || family == Family::FlatPowerR)
        return {-8, 8};
    return {-8, -1};
}

IntRange default_d_range(Family family, SearchMode mode)
{
    if (mode == SearchMode::Background && family != Family::FlatPowerC)
        return {1, 6};
    return {1, 12};
}

} // namespace csp
