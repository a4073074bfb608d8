#pragma once

#include "csp/catalog.hpp"
#include "csp/geometry.hpp"
#include "csp/quadrature.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csp {

/// Numeric view of a Solution at fixed (kappa, alpha, A^2), with the scale applied.
class SolutionField {
public:
    /// Throws SignIncompatible when alpha is inadmissible or A^2 <= 0,
    /// std::invalid_argument when kappa does not match the regime.
    SolutionField(const Solution& sol, double kappa, double alpha, double amp_sq = 1.0);

    const Solution& solution() const { return sol_; }
    const Space& space() const { return space_; }
    double alpha() const { return alpha_; }
    double amp_sq() const { return amp_sq_; }
    double omega() const { return omega_; }
    bool has_rho() const { return sol_.background(); }

    double u(double r) const;
    double du(double r) const;
    double V(double r) const;
    double rho(double r) const;

    /// Singular radii of u, ascending.
    const std::vector<double>& singular() const { return singular_; }

private:
    double eval(const NumericExpr& e, double r, int weight) const;

    Solution sol_;
    Space space_;
    double alpha_;
    double amp_sq_;
    double omega_;
    NumericExpr u_;
    NumericExpr du_;
    NumericExpr V_;
    std::optional<NumericExpr> rho_;
    std::vector<double> singular_;
};

struct Grid {
    std::vector<double> r;
    double h = 5e-5;
};

/// count points on [lo, hi], geometric when lo > 0 and geometric is set.
Grid make_grid(double lo, double hi, int count, double h, bool geometric = true);

/// Geometric [0.1, 10] with 2000 points; starts at r = 1 for origin-singular
/// solutions; spherical grids stay 0.7/sqrt(kappa) clear of singular radii.
Grid default_grid(const SolutionField& field, double h = 5e-5);

/// Throws GridError unless every point is inside the domain and at least
/// 10 h away from each singular radius.
void validate_grid(const Grid& grid, const SolutionField& field);

/// Second-order central difference Laplacian, one-sided at domain edges.
double fd_laplacian(const std::function<double(double)>& f, const Space& space, double r, double h);

struct Residuals {
    double schrodinger_max = 0.0;
    double poisson_max = 0.0;
};

/// max over the grid of |-Delta_h u + alpha V u - omega u| and
/// |-Delta_h V - u^2 - rho|, each divided by max(|u|, 1).
/// perturb multiplies u (detector sensitivity checks).
Residuals fd_residual(const SolutionField& field, const Grid& grid, double perturb = 1.0);

struct MassResult {
    IntegralStatus status = IntegralStatus::Converged;
    /// Sphere area times the radial integral.
    double value = 0.0;
    /// Radial integral of u^2 S^{D-1}.
    double radial = 0.0;
    std::string locus;

    bool divergent() const { return status == IntegralStatus::Divergent; }
};

/// Split at interior singular radii; any divergent piece makes the mass divergent.
MassResult mass(const SolutionField& field, const QuadOptions& options = {});

/// Numeric value matching the entry's mass convention.
double mass_in_convention(const MassResult& m, MassConvention convention);

/// (-Delta)^{-1} f with V_f -> 0 at infinity, flat or hyperbolic.
///
/// The cumulative charge M(s) is memoised on geometric nodes and
/// interpolated with cubic Hermite using M' = f w; V_f(r) = int_r^inf M/w.
class PoissonInverse {
public:
    PoissonInverse(std::function<double(double)> f, const Space& space, const QuadOptions& options = {});

    double operator()(double r) const;
    double cumulative(double r) const;
    /// M(infinity).
    double total_charge() const { return total_; }
    bool divergent() const { return divergent_; }

private:
    double weight(double r) const;
    double segment_integral(double a, double b) const;
    /// int_r^inf M/w for r beyond the last node.
    double outer_tail(double r) const;

    std::function<double(double)> f_;
    Space space_;
    QuadOptions options_;
    std::vector<double> nodes_;
    std::vector<double> m_;
    std::vector<double> dm_;
    /// suffix_[k] = int_{nodes_[k]}^inf M/w.
    std::vector<double> suffix_;
    double total_ = 0.0;
    bool settled_ = false;
    bool divergent_ = false;
};

struct Functional {
    IntegralStatus status = IntegralStatus::Converged;
    double value = 0.0;
    std::string locus;

    bool divergent() const { return status == IntegralStatus::Divergent; }
};

struct PohozaevFunctionals {
    Functional T;
    Functional N;
    Functional Q;
    /// Q recomputed as Sphere * int M^2 / w.
    Functional Q_check;
};

/// Flat, D > 2 (std::invalid_argument otherwise).
PohozaevFunctionals pohozaev_functionals(const SolutionField& field, const QuadOptions& options = {});

struct PohozaevReport {
    PohozaevFunctionals functionals;
    bool divergent = false;
    /// T - omega N + alpha Q, (D-2)T - D omega N + (D+2)/2 alpha Q, 4T + (D-2) alpha Q.
    double identity[3] = {0.0, 0.0, 0.0};
    /// max |identity| / T.
    double defect = 0.0;
};

PohozaevReport pohozaev_check(const SolutionField& field, const QuadOptions& options = {});

/// 4T + (D-2) alpha Q = 0 with T, Q > 0 has a solution only when (D-2) alpha < 0.
bool pohozaev_alpha_feasible(double alpha, int dim);

struct Tolerances {
    double residual = 1e-6;
    double mass_rel = 1e-8;
    double order_target = 2.0;
    double order_tol = 0.5;
    /// Residuals below this are roundoff; no order is measured.
    double order_floor = 1e-9;
    double pohozaev = 1e-6;
    double h = 5e-5;
    double h_coarse = 2e-3;
    double h_fine = 1e-3;
};

struct VerificationReport {
    std::string id;
    double kappa = 0.0;
    double alpha = 0.0;
    double amp_sq = 0.0;
    double grid_lo = 0.0;
    double grid_hi = 0.0;
    int grid_count = 0;
    bool symbolic_ok = false;
    Residuals residuals;
    std::optional<double> schrodinger_order;
    std::optional<double> poisson_order;
    MassResult mass_numeric;
    std::optional<double> mass_expected;
    std::optional<double> mass_rel_error;
    std::optional<double> pohozaev_defect;
    Tolerances tolerances;
    std::vector<std::string> failures;
    bool passed = false;
};

struct VerifyOptions {
    Tolerances tolerances;
    std::optional<Grid> grid;
    QuadOptions quad;
};

VerificationReport verify(const Solution& sol, double kappa, double alpha, double amp_sq = 1.0,
                          const VerifyOptions& options = {});

} // namespace csp
