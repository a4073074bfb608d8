#include "csp/symbolic.hpp"

#include "csp/errors.hpp"

#include <cmath>
#include <string>
#include <tuple>

namespace csp {

std::string_view to_string(Basis basis)
{
    switch (basis) {
    case Basis::FlatC: return "flat-c";
    case Basis::FlatR: return "flat-r";
    case Basis::CurvedC: return "curved-c";
    case Basis::CurvedS: return "curved-s";
    }
    return "?";
}

Basis parse_basis(std::string_view text)
{
    if (text == "flat-c") return Basis::FlatC;
    if (text == "flat-r") return Basis::FlatR;
    if (text == "curved-c") return Basis::CurvedC;
    if (text == "curved-s") return Basis::CurvedS;
    throw std::invalid_argument("unknown basis: " + std::string(text));
}

bool is_curved(Basis basis)
{
    return basis == Basis::CurvedC || basis == Basis::CurvedS;
}

bool TermOrder::operator()(const TermKey& a, const TermKey& b) const
{
    return std::tie(b.base_pow, b.odd_pow, a.kappa_pow, a.alpha_pow, a.amp_pow)
         < std::tie(a.base_pow, a.odd_pow, b.kappa_pow, b.alpha_pow, b.amp_pow);
}

RadialExpr RadialExpr::monomial(Basis basis, const Rational& coeff, TermKey key)
{
    RadialExpr e(basis);
    e.add_term(key, coeff);
    return e;
}

RadialExpr RadialExpr::constant(Basis basis, const Rational& value)
{
    return monomial(basis, value, TermKey{});
}

void RadialExpr::add_term(TermKey key, const Rational& coeff)
{
    if (coeff == 0)
        return;
    if (key.odd_pow < 0)
        throw BasisError("negative power of the odd factor");
    if (basis_ == Basis::FlatR && key.odd_pow != 0)
        throw BasisError("flat-r basis has no odd factor");
    if (key.odd_pow >= 2) {
        TermKey lower = key;
        lower.odd_pow -= 2;
        TermKey raised = lower;
        switch (basis_) {
        case Basis::FlatC: // r^2 = c^2 - 1
            raised.base_pow += 2;
            add_term(raised, coeff);
            add_term(lower, -coeff);
            break;
        case Basis::CurvedC: // S^2 = (-kappa)^{-1} (C^2 - 1)
            raised.base_pow += 2;
            raised.kappa_pow -= 1;
            lower.kappa_pow -= 1;
            add_term(raised, coeff);
            add_term(lower, -coeff);
            break;
        case Basis::CurvedS: // C^2 = 1 + (-kappa) S^2
            raised.base_pow += 2;
            raised.kappa_pow += 1;
            add_term(lower, coeff);
            add_term(raised, coeff);
            break;
        case Basis::FlatR:
            break;
        }
        return;
    }
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

namespace {

void require_same_basis(const RadialExpr& a, const RadialExpr& b)
{
    if (a.basis() != b.basis())
        throw ModeMismatch(std::string("cannot combine ") + std::string(to_string(a.basis())) + " and "
                           + std::string(to_string(b.basis())) + " expressions");
}

TermKey operator+(const TermKey& a, const TermKey& b)
{
    return {a.base_pow + b.base_pow, a.odd_pow + b.odd_pow, a.kappa_pow + b.kappa_pow,
            a.alpha_pow + b.alpha_pow, a.amp_pow + b.amp_pow};
}

TermKey operator-(const TermKey& a, const TermKey& b)
{
    return {a.base_pow - b.base_pow, a.odd_pow - b.odd_pow, a.kappa_pow - b.kappa_pow,
            a.alpha_pow - b.alpha_pow, a.amp_pow - b.amp_pow};
}

} // namespace

RadialExpr& RadialExpr::operator+=(const RadialExpr& other)
{
    require_same_basis(*this, other);
    for (const auto& [key, coeff] : other.terms_)
        add_term(key, coeff);
    return *this;
}

RadialExpr& RadialExpr::operator-=(const RadialExpr& other)
{
    require_same_basis(*this, other);
    for (const auto& [key, coeff] : other.terms_)
        add_term(key, -coeff);
    return *this;
}

RadialExpr& RadialExpr::operator*=(const Rational& factor)
{
    if (factor == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, coeff] : terms_)
        coeff *= factor;
    return *this;
}

RadialExpr operator*(const RadialExpr& a, const RadialExpr& b)
{
    require_same_basis(a, b);
    RadialExpr out(a.basis());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            out.add_term(ka + kb, ca * cb);
    return out;
}

RadialExpr RadialExpr::operator-() const
{
    RadialExpr out = *this;
    return out *= Rational(-1);
}

bool RadialExpr::operator==(const RadialExpr& other) const
{
    if (basis_ != other.basis_ || terms_.size() != other.terms_.size())
        return false;
    auto it = other.terms_.begin();
    for (const auto& [key, coeff] : terms_) {
        if (!(key == it->first) || coeff != it->second)
            return false;
        ++it;
    }
    return true;
}

RadialExpr expr_add(const RadialExpr& a, const RadialExpr& b) { return a + b; }
RadialExpr expr_mul(const RadialExpr& a, const RadialExpr& b) { return a * b; }

RadialExpr derivative(const RadialExpr& e)
{
    RadialExpr out(e.basis());
    for (const auto& [key, coeff] : e.terms()) {
        const int b = key.base_pow;
        const int o = key.odd_pow;
        TermKey first = key;
        TermKey second = key;
        switch (e.basis()) {
        case Basis::FlatC: // d c = r/c, d r = 1
            first.base_pow -= 2;
            first.odd_pow += 1;
            out.add_term(first, coeff * b);
            if (o > 0) {
                second.odd_pow -= 1;
                out.add_term(second, coeff * o);
            }
            break;
        case Basis::FlatR:
            first.base_pow -= 1;
            out.add_term(first, coeff * b);
            break;
        case Basis::CurvedC: // d C = (-kappa) S, d S = C
            first.base_pow -= 1;
            first.odd_pow += 1;
            first.kappa_pow += 1;
            out.add_term(first, coeff * b);
            if (o > 0) {
                second.base_pow += 1;
                second.odd_pow -= 1;
                out.add_term(second, coeff * o);
            }
            break;
        case Basis::CurvedS: // d S = C, d C = (-kappa) S
            first.base_pow -= 1;
            first.odd_pow += 1;
            out.add_term(first, coeff * b);
            if (o > 0) {
                second.base_pow += 1;
                second.odd_pow -= 1;
                second.kappa_pow += 1;
                out.add_term(second, coeff * o);
            }
            break;
        }
    }
    return out;
}

namespace {

/// (C/S) * e', where C/S reads 1/r in flat bases.
RadialExpr times_cot(const RadialExpr& e)
{
    RadialExpr out(e.basis());
    for (const auto& [key, coeff] : e.terms()) {
        TermKey k = key;
        switch (e.basis()) {
        case Basis::FlatC:
        case Basis::CurvedC:
            if (k.odd_pow == 0)
                throw BasisError("Laplacian of an odd term leaves the basis for D > 1");
            k.odd_pow = 0;
            if (e.basis() == Basis::CurvedC)
                k.base_pow += 1;
            break;
        case Basis::CurvedS:
            k.base_pow -= 1;
            k.odd_pow += 1;
            break;
        case Basis::FlatR:
            k.base_pow -= 1;
            break;
        }
        out.add_term(k, coeff);
    }
    return out;
}

} // namespace

RadialExpr laplacian(const RadialExpr& e, int dim)
{
    if (dim < 1)
        throw std::invalid_argument("laplacian needs D >= 1");
    const RadialExpr d1 = derivative(e);
    RadialExpr out = derivative(d1);
    if (dim > 1)
        out += times_cot(d1) * Rational(dim - 1);
    return out;
}

RadialExpr expr_div_exact(const RadialExpr& a, const RadialExpr& b)
{
    require_same_basis(a, b);
    if (b.size() != 1)
        throw BasisError("exact division needs a single-monomial divisor");
    const auto& [bkey, bcoeff] = *b.terms().begin();
    RadialExpr out(a.basis());
    for (const auto& [key, coeff] : a.terms()) {
        const TermKey q = key - bkey;
        if (q.odd_pow < 0)
            throw BasisError("division by the odd factor leaves the basis");
        out.add_term(q, coeff / bcoeff);
    }
    return out;
}

RadialExpr shift_base(const RadialExpr& e, int shift)
{
    RadialExpr out(e.basis());
    for (const auto& [key, coeff] : e.terms()) {
        TermKey k = key;
        k.base_pow += shift;
        out.add_term(k, coeff);
    }
    return out;
}

std::vector<Monomial> collect(const RadialExpr& e)
{
    std::vector<Monomial> out;
    out.reserve(e.size());
    for (const auto& [key, coeff] : e.terms())
        out.push_back({key, coeff});
    return out;
}

namespace {

Rational rational_pow(const Rational& base, int exponent)
{
    Rational out(1);
    const int n = exponent < 0 ? -exponent : exponent;
    for (int i = 0; i < n; ++i)
        out *= base;
    if (exponent < 0) {
        if (out == 0)
            throw std::domain_error("zero amplitude law raised to a negative power");
        out = Rational(1) / out;
    }
    return out;
}

int floor_div2(int p)
{
    return p >= 0 ? p / 2 : -((-p + 1) / 2);
}

} // namespace

RadialExpr substitute_amplitude(const RadialExpr& e, const Rational& q, int kappa_pow)
{
    RadialExpr out(e.basis());
    for (const auto& [key, coeff] : e.terms()) {
        const int j = floor_div2(key.amp_pow);
        TermKey k = key;
        k.amp_pow -= 2 * j;
        k.kappa_pow += kappa_pow * j;
        k.alpha_pow -= j;
        out.add_term(k, coeff * rational_pow(q, j));
    }
    return out;
}

RadialExpr constant_part(const RadialExpr& e)
{
    RadialExpr out(e.basis());
    for (const auto& [key, coeff] : e.terms())
        if (key.base_pow == 0 && key.odd_pow == 0)
            out.add_term(key, coeff);
    return out;
}

namespace {

void require_regime(Basis basis, Regime regime)
{
    const bool flat = regime == Regime::Flat;
    if (flat == is_curved(basis))
        throw ModeMismatch(std::string(to_string(basis)) + " expression cannot live in "
                           + std::string(to_string(regime)) + " space");
}

/// Base and odd factor in extended precision; FD stencils difference these
/// values at h ~ 1e-4, so every ulp of evaluation noise is amplified by 1/h^2.
struct BaseValues {
    long double base;
    long double odd;
    bool base_vanishes;
};

BaseValues base_values(Basis basis, const Space& space, double r)
{
    constexpr long double tiny = 1e-13L;
    check_radius(space, r);
    const long double x = r;
    const long double k = space.rate();
    const bool sph = space.regime() == Regime::Spherical;
    switch (basis) {
    case Basis::FlatC: return {std::sqrt(1.0L + x * x), x, false};
    case Basis::FlatR: return {x, 0.0L, r == 0.0};
    case Basis::CurvedC: {
        const long double c = sph ? std::cos(k * x) : std::cosh(k * x);
        const long double s = (sph ? std::sin(k * x) : std::sinh(k * x)) / k;
        return {c, s, std::abs(c) < tiny};
    }
    case Basis::CurvedS: {
        const long double s = (sph ? std::sin(k * x) : std::sinh(k * x)) / k;
        const long double c = sph ? std::cos(k * x) : std::cosh(k * x);
        return {s, c, r == 0.0 || std::abs(s * k) < tiny};
    }
    }
    return {0.0L, 0.0L, true};
}

} // namespace

NumericExpr::NumericExpr(const RadialExpr& e, const Space& space, double alpha, double amp_sq)
    : basis_(e.basis()), space_(space)
{
    require_regime(e.basis(), space.regime());
    if (e.empty())
        return;
    if (amp_sq < 0.0)
        throw std::invalid_argument("A^2 must be nonnegative");
    const double neg_kappa = -space.kappa();
    const long double amp = std::sqrt(static_cast<long double>(amp_sq));
    for (const auto& [key, coeff] : e.terms()) {
        if (key.alpha_pow < 0 && alpha == 0.0)
            throw std::domain_error("negative power of a zero coupling");
        long double c = boost::multiprecision::numerator(coeff).convert_to<long double>()
                       / boost::multiprecision::denominator(coeff).convert_to<long double>();
        if (key.kappa_pow != 0)
            c *= std::pow(static_cast<long double>(neg_kappa), key.kappa_pow);
        if (key.alpha_pow != 0)
            c *= std::pow(static_cast<long double>(alpha), key.alpha_pow);
        if (key.amp_pow != 0)
            c *= std::pow(amp, key.amp_pow);
        terms_.push_back({c, key.base_pow, key.odd_pow});
        has_pole_ = has_pole_ || key.base_pow < 0;
    }
}

double NumericExpr::operator()(double r) const
{
    if (terms_.empty())
        return 0.0;
    const BaseValues v = base_values(basis_, space_, r);
    if (has_pole_ && v.base_vanishes)
        throw PoleError("expression has a pole at r = " + std::to_string(r), r);
    long double sum = 0.0L;
    for (const Term& t : terms_) {
        long double term = t.coeff;
        if (t.base_pow != 0)
            term *= std::pow(v.base, t.base_pow);
        if (t.odd_pow != 0)
            term *= v.odd;
        sum += term;
    }
    return static_cast<double>(sum);
}

double expr_eval(const RadialExpr& e, const Space& space, double r, double alpha, double amp_sq)
{
    return NumericExpr(e, space, alpha, amp_sq)(r);
}

LimitResult limit_at_infinity(const RadialExpr& e, Regime regime)
{
    LimitResult out;
    if (regime == Regime::Spherical) {
        out.kind = LimitResult::Kind::NotApplicable;
        return out;
    }
    require_regime(e.basis(), regime);
    out.kind = LimitResult::Kind::Finite;
    for (const auto& [key, coeff] : e.terms()) {
        const int growth = key.base_pow + key.odd_pow;
        if (growth > 0) {
            out.kind = LimitResult::Kind::Diverges;
            out.value.clear();
            return out;
        }
        if (growth < 0)
            continue;
        GradedConst term;
        term.coeff = coeff;
        term.kappa_pow = key.kappa_pow;
        term.alpha_pow = key.alpha_pow;
        term.amp_pow = key.amp_pow;
        if (key.odd_pow == 1) {
            // S/C -> (-kappa)^{-1/2}, C/S -> (-kappa)^{1/2}, r/c -> 1
            if (e.basis() == Basis::CurvedC)
                term.kappa_pow -= Rational(1, 2);
            else if (e.basis() == Basis::CurvedS)
                term.kappa_pow += Rational(1, 2);
        }
        bool merged = false;
        for (auto& existing : out.value) {
            if (existing.kappa_pow == term.kappa_pow && existing.alpha_pow == term.alpha_pow
                && existing.amp_pow == term.amp_pow) {
                existing.coeff += term.coeff;
                merged = true;
                break;
            }
        }
        if (!merged)
            out.value.push_back(term);
    }
    std::erase_if(out.value, [](const GradedConst& g) { return g.coeff == 0; });
    return out;
}

} // namespace csp
