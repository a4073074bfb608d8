#pragma once

#include "csp/geometry.hpp"
#include "csp/graded.hpp"
#include "csp/rational.hpp"

#include <compare>
#include <map>
#include <string_view>
#include <vector>

namespace csp {

/// Closed monomial bases. Each has a primary generator (any integer power)
/// and at most one odd factor (power 0 or 1):
///
///   FlatC    c = (1+r^2)^{1/2}, odd r,  r^2 = c^2 - 1
///   FlatR    r,                 no odd factor
///   CurvedC  C,                 odd S,  (-kappa) S^2 = C^2 - 1
///   CurvedS  S,                 odd C,  C^2 = 1 + (-kappa) S^2
enum class Basis { FlatC, FlatR, CurvedC, CurvedS };

std::string_view to_string(Basis basis);
Basis parse_basis(std::string_view text);
bool is_curved(Basis basis);

/// Grades of a monomial: base^base_pow odd^odd_pow (-kappa)^kappa_pow alpha^alpha_pow A^amp_pow.
struct TermKey {
    int base_pow = 0;
    int odd_pow = 0;
    int kappa_pow = 0;
    int alpha_pow = 0;
    int amp_pow = 0;

    bool operator==(const TermKey&) const = default;
};

/// Descending base power, then descending odd power, then ascending grades.
struct TermOrder {
    bool operator()(const TermKey& a, const TermKey& b) const;
};

struct Monomial {
    TermKey key;
    Rational coeff;
};

/// Exact radial expression in normal form: unique keys, nonzero coefficients,
/// odd powers reduced to 0 or 1. Immutable in spirit; all algebra returns new values.
class RadialExpr {
public:
    using TermMap = std::map<TermKey, Rational, TermOrder>;

    explicit RadialExpr(Basis basis) : basis_(basis) {}

    static RadialExpr monomial(Basis basis, const Rational& coeff, TermKey key);
    static RadialExpr constant(Basis basis, const Rational& value);

    Basis basis() const noexcept { return basis_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }

    /// Adds coeff * key, reducing odd powers >= 2 through the basis relation.
    void add_term(TermKey key, const Rational& coeff);

    RadialExpr& operator+=(const RadialExpr& other);
    RadialExpr& operator-=(const RadialExpr& other);
    RadialExpr& operator*=(const Rational& factor);

    friend RadialExpr operator+(RadialExpr a, const RadialExpr& b) { return a += b; }
    friend RadialExpr operator-(RadialExpr a, const RadialExpr& b) { return a -= b; }
    friend RadialExpr operator*(RadialExpr a, const Rational& f) { return a *= f; }
    friend RadialExpr operator*(const Rational& f, RadialExpr a) { return a *= f; }
    friend RadialExpr operator*(const RadialExpr& a, const RadialExpr& b);
    RadialExpr operator-() const;

    bool operator==(const RadialExpr& other) const;

private:
    Basis basis_;
    TermMap terms_;
};

RadialExpr expr_add(const RadialExpr& a, const RadialExpr& b);
RadialExpr expr_mul(const RadialExpr& a, const RadialExpr& b);

/// Exact d/dr.
RadialExpr derivative(const RadialExpr& e);

/// Radial Laplace-Beltrami operator e'' + (D-1)(C/S) e'.
///
/// Closed for every input in FlatR and CurvedS; in FlatC and CurvedC the input
/// must have odd_pow = 0 unless D = 1 (otherwise BasisError).
RadialExpr laplacian(const RadialExpr& e, int dim);

/// Quotient by a single monomial; throws BasisError for other divisors.
RadialExpr expr_div_exact(const RadialExpr& a, const RadialExpr& b);

/// Multiplies every term by base^shift (used to clear denominators).
RadialExpr shift_base(const RadialExpr& e, int shift);

/// Monomials in deterministic order (base power descending, then grades).
std::vector<Monomial> collect(const RadialExpr& e);

/// Replaces every A^2 by X/alpha = q (-kappa)^k / alpha. Odd amplitude powers keep one A.
RadialExpr substitute_amplitude(const RadialExpr& e, const Rational& q, int kappa_pow);

/// Terms with base_pow = 0 and odd_pow = 0.
RadialExpr constant_part(const RadialExpr& e);

/// Numeric value; (-kappa) grades use the signed curvature, A = sqrt(amp_sq).
/// Throws PoleError where a vanishing base meets a negative power.
double expr_eval(const RadialExpr& e, const Space& space, double r, double alpha, double amp_sq);

/// Expression with its grades folded into double coefficients, for repeated evaluation.
class NumericExpr {
public:
    NumericExpr(const RadialExpr& e, const Space& space, double alpha, double amp_sq);

    /// Same value and errors as expr_eval.
    double operator()(double r) const;

private:
    struct Term {
        long double coeff;
        int base_pow;
        int odd_pow;
    };

    Basis basis_;
    Space space_;
    std::vector<Term> terms_;
    bool has_pole_ = false;
};

struct LimitResult {
    enum class Kind { Finite, Diverges, NotApplicable };
    Kind kind = Kind::NotApplicable;
    /// Sum of graded constants; kappa grades may be half-integral (odd-factor asymptotics).
    std::vector<GradedConst> value;
};

/// r -> infinity limit. Flat and hyperbolic only; the sphere is compact.
LimitResult limit_at_infinity(const RadialExpr& e, Regime regime);

} // namespace csp
