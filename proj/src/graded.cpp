#include "csp/graded.hpp"

#include "csp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace csp {

std::string_view to_string(AlphaSign sign)
{
    switch (sign) {
    case AlphaSign::Attractive: return "attractive";
    case AlphaSign::Repulsive: return "repulsive";
    case AlphaSign::Any: return "any";
    }
    return "?";
}

AlphaSign parse_alpha_sign(std::string_view text)
{
    if (text == "attractive") return AlphaSign::Attractive;
    if (text == "repulsive") return AlphaSign::Repulsive;
    if (text == "any") return AlphaSign::Any;
    throw std::invalid_argument("unknown alpha sign: " + std::string(text));
}

bool alpha_admissible(AlphaSign sign, double alpha)
{
    switch (sign) {
    case AlphaSign::Attractive: return alpha < 0.0;
    case AlphaSign::Repulsive: return alpha > 0.0;
    case AlphaSign::Any: return alpha != 0.0;
    }
    return false;
}

double GradedConst::evaluate(double kappa, double alpha, double amp_sq) const
{
    double value = to_double(coeff);
    if (value == 0.0)
        return 0.0;
    if (pi_pow != 0)
        value *= std::pow(std::numbers::pi, pi_pow);
    if (sphere_dim)
        value *= sphere_area(*sphere_dim + 1);
    const double k = to_double(kappa_pow);
    if (base == GradeBase::Magnitude) {
        if (k != 0.0)
            value *= std::pow(std::abs(kappa), k);
        if (alpha_pow != 0)
            value *= std::pow(std::abs(alpha), alpha_pow);
    } else {
        if (boost::multiprecision::denominator(kappa_pow) != 1 && !(-kappa > 0.0))
            throw std::domain_error("fractional power of (-kappa) needs kappa < 0");
        if (k != 0.0)
            value *= std::pow(-kappa, k);
        if (alpha_pow != 0)
            value *= std::pow(alpha, alpha_pow);
    }
    if (amp_pow != 0)
        value *= std::pow(amp_sq, 0.5 * amp_pow);
    return value;
}

double AmpLaw::amp_sq(double kappa, double alpha) const
{
    if (free)
        throw std::logic_error("free amplitude has no law; supply A^2 directly");
    if (alpha == 0.0)
        throw SignIncompatible("coupling alpha must be nonzero");
    const double x = to_double(q) * std::pow(-kappa, kappa_pow);
    const double a2 = x / alpha;
    if (!(a2 > 0.0))
        throw SignIncompatible("A^2 = " + std::to_string(a2) + " is not positive for alpha = "
                               + std::to_string(alpha));
    return a2;
}

AlphaSign AmpLaw::required_sign(Regime regime) const
{
    if (free)
        return AlphaSign::Any;
    int s = sign(q);
    // (-kappa) is negative only on the sphere
    if (regime == Regime::Spherical && (kappa_pow % 2) != 0)
        s = -s;
    return s < 0 ? AlphaSign::Attractive : AlphaSign::Repulsive;
}

} // namespace csp
