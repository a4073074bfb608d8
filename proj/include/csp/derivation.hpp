#pragma once

#include "csp/geometry.hpp"
#include "csp/graded.hpp"
#include "csp/symbolic.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csp {

/// Trial function u = A * base^n.
enum class Family { FlatPowerC, CurvedPowerC, CurvedPowerS, FlatPowerR };

std::string_view to_string(Family family);
/// Accepts the CLI names flat-c, curved-c, curved-s, flat-r.
Family parse_family(std::string_view text);
Basis family_basis(Family family);

struct AnsatzFamily {
    Family family = Family::FlatPowerC;
    int n = 0;
};

enum class SearchMode { Homogeneous, Background, Singular };

std::string_view to_string(SearchMode mode);
SearchMode parse_search_mode(std::string_view text);

enum class OmegaLabel { Limit, Conventional };

std::string_view to_string(OmegaLabel label);
OmegaLabel parse_omega_label(std::string_view text);

/// Closed integer interval [lo, hi].
struct IntRange {
    int lo = 0;
    int hi = 0;
    int size() const { return hi - lo + 1; }
};

/// Parses "a..b" or a single integer "a".
IntRange parse_int_range(std::string_view text);

struct Omega {
    GradedConst value;
    OmegaLabel label = OmegaLabel::Limit;
};

struct DerivationHit {
    AnsatzFamily ansatz;
    Regime regime = Regime::Flat;
    int dim = 1;
    SearchMode mode = SearchMode::Homogeneous;
    AmpLaw amp_law;
    Omega omega;
    RadialExpr u{Basis::FlatC};
    RadialExpr V{Basis::FlatC};
    /// Empty in homogeneous and singular modes.
    RadialExpr rho{Basis::FlatC};
    AlphaSign alpha_sign = AlphaSign::Any;
    std::string notes;
};

/// u = A * base^n (amplitude grade 1).
RadialExpr trial_function(const AnsatzFamily& ansatz);

/// Delta u / u; equals alpha V - omega.
RadialExpr potential_term(const AnsatzFamily& ansatz, Regime regime, int dim);

/// omega = -(constant split of Delta u / u). Flat and hyperbolic values are the
/// r -> infinity limit of -Delta u / u; spherical values are labelled CONVENTIONAL.
Omega omega_of(const AnsatzFamily& ansatz, Regime regime, int dim);

/// V = alpha^{-1} (Delta u / u + omega).
RadialExpr potential_V(const AnsatzFamily& ansatz, Regime regime, int dim);

/// R = alpha u^2 + alpha Delta V. The single (alpha^1, A^2) term carries the unknown X = alpha A^2.
RadialExpr consistency_residual(const AnsatzFamily& ansatz, Regime regime, int dim);

/// True when u = A base^n has a pole in the open radial domain (or, on the
/// sphere, at an endpoint).
bool trial_is_singular(const AnsatzFamily& ansatz, Regime regime);

struct CandidateOutcome {
    std::optional<DerivationHit> hit;
    /// The residual would vanish only with X = 0, i.e. u = 0.
    bool zero_amplitude = false;
    std::string reason;
};

/// Tests one (n, D) pair. max_rho_terms is ignored outside background mode.
CandidateOutcome evaluate_candidate(const AnsatzFamily& ansatz, Regime regime, int dim, SearchMode mode,
                                    int max_rho_terms = 1);

/// Hits ordered by D, then n. Ranges must be non-empty with at most 64 values.
std::vector<DerivationHit> solve_homogeneous(Family family, Regime regime, IntRange n_range, IntRange d_range);
std::vector<DerivationHit> solve_singular_flat(IntRange d_range, IntRange n_range = {-8, 8});
std::vector<DerivationHit> solve_background(Family family, Regime regime, IntRange n_range, IntRange d_range,
                                            int max_rho_terms = 1);

struct SignClass {
    enum class Status { Ok, NoSolution };
    Status status = Status::Ok;
    AlphaSign alpha_sign = AlphaSign::Any;
    /// Sign of rho's leading coefficient under the admissible alpha; 0 when rho is empty.
    int rho_sign = 0;
};

SignClass classify_alpha_sign(const DerivationHit& hit);
/// Runs the candidate test first; zero-amplitude candidates give NoSolution.
SignClass classify_alpha_sign(const AnsatzFamily& ansatz, Regime regime, int dim, SearchMode mode,
                              int max_rho_terms = 1);

/// Default search boxes used by the CLI and the catalog cross-check.
IntRange default_n_range(Family family, SearchMode mode);
IntRange default_d_range(Family family, SearchMode mode);

} // namespace csp
