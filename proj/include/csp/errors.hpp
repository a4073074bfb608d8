#pragma once

#include <stdexcept>
#include <string>

namespace csp {

/// Argument outside the radial domain of a space (r < 0, r past the antipode).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A metric factor vanished where a negative power needs to divide by it.
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what, double radius = 0.0)
        : std::domain_error(what), radius_(radius) {}
    double radius() const noexcept { return radius_; }

private:
    double radius_;
};

/// Expressions from different bases were combined.
class ModeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation would leave the closed monomial basis.
class BasisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coupling/curvature values give A^2 <= 0 for the requested solution.
class SignIncompatible : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotScalable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownSolution : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Grid touches a singular radius or leaves the domain.
class GridError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace csp
