#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/geometry.hpp"
#include "gaplab/groundstate.hpp"
#include "gaplab/schrodinger_operator.hpp"
#include "gaplab/spectrum.hpp"

namespace gaplab {

/// u = u2 / u1 over the nodes where u1 is reliably positive.
struct QuotientField {
    /// NaN where u1 < delta sup u1 (and at Dirichlet boundary nodes without a usable extrapolation).
    std::vector<double> u;
    double sup_abs = 0.0;
    /// Node touches an edge across which u changes sign.
    std::vector<std::uint8_t> nodal;
    /// Outward normal derivative per boundary node; NaN elsewhere or where u is unavailable.
    std::vector<double> normal_derivative;
    /// The quotient was negated so that it is positive at its max-magnitude node.
    bool flipped = false;
    double delta = 0.0;
    BoundaryCondition bc = BoundaryCondition::dirichlet;

    bool has_nodal_set() const;
};

/**
 * Dirichlet boundary values come from quadratic extrapolation along the inward line.
 * Throws ExtrapolationUnstable when quadratic and linear extrapolants differ by more
 * than 0.1 sup|u|.
 */
QuotientField quotient(const SpectrumResult& spectrum, const DomainGrid& grid, BoundaryCondition bc,
                       double delta = 1e-6);

/// max over boundary nodes of |du/dnu|; nullopt when u1 < delta sup u1 on the extrapolation stencil.
std::optional<double> boundary_derivative_check(const QuotientField& q, const DomainGrid& grid);

/// max over the mask of |Laplacian(u) + gap u - 2 grad phi . grad u|.
double quotient_residual(const QuotientField& q, const GroundStateLog& gsl, const DomainGrid& grid, double gap);

/// arcsin(1 / sqrt(1 + beta / (sqrt 2 - beta))); throws DomainError outside (0, sqrt 2).
double theta(double beta);

struct BoundValue {
    bool applicable = false;
    /// Evaluated but not asserted.
    bool advisory = false;
    double value = std::numeric_limits<double>::quiet_NaN();
    double margin = std::numeric_limits<double>::quiet_NaN();
};

struct GapBounds {
    double gap = 0.0;
    BoundValue universal;
    BoundValue beta;
    double beta_star = std::numeric_limits<double>::quiet_NaN();
    BoundValue deficit;
    /// max(0, -hess_min).
    double a = 0.0;
};

/// sup over beta in (0, sqrt 2) of theta(beta)^2 / d^2 + beta sqrt(c), with the maximizing beta.
std::pair<double, double> beta_bound(double c, double d);

/// 2 d^-2 exp(-a d^2).
double deficit_bound(double a, double d);

/// Bounds are applicable when c > 0 (universal, beta); deficit is advisory for Dirichlet problems.
GapBounds gap_lower_bounds(const DomainMetrics& metrics, double c, double hess_min, double gap_measured,
                           BoundaryCondition bc);

struct GradientChecks {
    /// max over the mask of |grad u| / sqrt(alpha K sup u^2 - alpha u^2) - 1 with alpha = gap - beta sqrt(c).
    bool quotient_gradient_applicable = false;
    double quotient_gradient_alpha = std::numeric_limits<double>::quiet_NaN();
    double quotient_gradient_margin = std::numeric_limits<double>::quiet_NaN();
    /// max over the mask of |grad u|/(c_bar - u) - sqrt(alpha) sqrt(log c_bar - log(c_bar - u)).
    bool barrier_applicable = false;
    double barrier_alpha = std::numeric_limits<double>::quiet_NaN();
    double barrier_c_bar = std::numeric_limits<double>::quiet_NaN();
    double barrier_margin = std::numeric_limits<double>::quiet_NaN();
    /// Same with log c_bar replaced by log(c_bar - inf u).
    double barrier_corrected_margin = std::numeric_limits<double>::quiet_NaN();
};

/// u is sup-normalized internally. The quotient estimate needs c > 0 and gap > beta sqrt(c); the barrier estimate needs Neumann.
GradientChecks proof_gradient_checks(const QuotientField& q, const GroundStateLog& gsl, const DomainGrid& grid,
                                     double gap, double c, double hess_min, double beta, double epsilon);

enum class CheckStatus { pass, fail, skipped, info };

std::string to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    /// A failed blocking check fails the run.
    bool blocking = false;
    double measured = std::numeric_limits<double>::quiet_NaN();
    double bound = std::numeric_limits<double>::quiet_NaN();
    double margin = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    std::string note;
};

/// Everything a run measured; absent pieces become SKIPPED checks.
struct ReportInputs {
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    double h = 0.0;
    double tol_check = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double residual1 = 0.0;
    double residual2 = 0.0;
    double solver_tol = 0.0;
    bool near_degenerate = false;
    double c = 0.0;
    GapBounds bounds;
    std::optional<HessianExtrema> hessian;
    std::optional<double> identity_residual;
    std::optional<double> quotient_residual;
    std::optional<double> boundary_derivative;
    std::optional<GradientChecks> gradient;
    std::optional<LaplacianBounds> laplacian;
    std::optional<PolarDiagnostics> polar;
    std::optional<GrowthResult> growth;
    std::string growth_skip_reason;
    std::optional<CutoffRecord> cutoff;
    /// Reasons for pieces that could not be computed, keyed by check name.
    std::vector<std::pair<std::string, std::string>> skipped;
};

struct GapReport {
    double gap = 0.0;
    GapBounds bounds;
    std::vector<CheckResult> checks;
    /// FAIL when any blocking check fails, else PASS.
    CheckStatus status = CheckStatus::pass;

    const CheckResult* find(const std::string& name) const;
};

/// Names of every check assemble_report can emit.
const std::vector<std::string>& check_names();

GapReport assemble_report(const ReportInputs& in);

}  // namespace gaplab
