#pragma once

#include "csp/geometry.hpp"
#include "csp/rational.hpp"

#include <optional>
#include <string_view>

namespace csp {

enum class AlphaSign { Attractive, Repulsive, Any };

std::string_view to_string(AlphaSign sign);
AlphaSign parse_alpha_sign(std::string_view text);
/// True when alpha's sign is admissible for `sign` (Any admits both).
bool alpha_admissible(AlphaSign sign, double alpha);

/// How the curvature and coupling bases of a GradedConst are read.
///
/// Signed: (-kappa)^k alpha^a with k integral. Magnitude: |kappa|^k |alpha|^a,
/// used for masses whose curvature grade may be half-integral.
enum class GradeBase { Signed, Magnitude };

/// coeff * pi^pi_pow * Sphere_{sphere_dim} * base(kappa)^kappa_pow * base(alpha)^alpha_pow * A^amp_pow
struct GradedConst {
    Rational coeff{0};
    int pi_pow = 0;
    std::optional<int> sphere_dim;
    Rational kappa_pow{0};
    int alpha_pow = 0;
    int amp_pow = 0;
    GradeBase base = GradeBase::Signed;

    bool is_zero() const { return coeff == 0; }
    double evaluate(double kappa, double alpha, double amp_sq = 1.0) const;

    bool operator==(const GradedConst&) const = default;
};

/// Amplitude law X = alpha A^2 = q (-kappa)^kappa_pow, or a free amplitude.
struct AmpLaw {
    bool free = false;
    Rational q{0};
    int kappa_pow = 0;

    /// A^2 for given parameters; throws SignIncompatible when it is not positive.
    double amp_sq(double kappa, double alpha) const;
    /// The coupling sign that makes A^2 > 0 in `regime`.
    AlphaSign required_sign(Regime regime) const;

    bool operator==(const AmpLaw&) const = default;
};

} // namespace csp
