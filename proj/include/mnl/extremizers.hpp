#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mnl/norms.hpp"

namespace mnl {

/// Default chirp parameter for the quadratic-phase experiments.
inline constexpr double kDefaultEta = 0.2;

// Candidate maximisers. Indices are 0-based.
struct ChirpB {
    double eta = kDefaultEta;
};
struct ColumnC {
    long k = 0;
    cdouble value = 1.0;
};
struct RowR {
    long j = 0;
    cdouble value = 1.0;
};
struct OnesD {
    cdouble value = 1.0;
};
struct UnitE {
    long m = 0;
    long n = 0;
    cdouble value = 1.0;
};

using ExtremizerKind = std::variant<ChirpB, ColumnC, RowR, OnesD, UnitE>;

std::string kind_name(const ExtremizerKind& kind);

/// Literal matrix for the given kind. Throws ValidationError for out-of-range
/// indices, a zero value, or eta outside (0,1).
CoefficientMatrix build(const ExtremizerKind& kind, long M, long N);

/// Chirp sum of length M at x; requires 0 < eta < 1 and eta <= x <= 1 - eta.
class ChirpParams {
public:
    ChirpParams(long M, double eta, double x);

    long M() const { return M_; }
    double eta() const { return eta_; }
    double x() const { return x_; }

private:
    long M_;
    double eta_;
    double x_;
};

/// sum_{m=0}^{M-1} e^{2 pi i m (x - (eta/4)(m/M))} at any real x, by compensated
/// direct summation with extended-precision phase reduction.
cdouble chirp_series(long M, double eta, double x);

cdouble chirp_sum(const ChirpParams& params);

/// sqrt(2/eta) e^{-i pi/4} e^{2 pi i M x^2 / eta} sqrt(M).
cdouble chirp_main_term(const ChirpParams& params);

struct ChirpResidualRow {
    long M = 0;
    double x = 0.0;
    double modulus = 0.0;             // |chirp_sum|
    double normalized_modulus = 0.0;  // |chirp_sum| / sqrt(M)
    double residual = 0.0;            // |chirp_sum - chirp_main_term|
};

struct ChirpResidualSweep {
    double eta = 0.0;
    std::vector<ChirpResidualRow> rows;
    /// Max residual over x, per M, in ladder order.
    std::vector<std::pair<long, double>> max_residual;
    /// Least-squares slope of log(max residual) against log(M).
    double slope = 0.0;
    /// Range of |chirp_sum| / sqrt(M) over x at the largest M.
    double normalized_min = 0.0;
    double normalized_max = 0.0;
    /// sqrt(2/eta).
    double predicted_normalized = 0.0;
};

ChirpResidualSweep chirp_residual_sweep(double eta, const std::vector<double>& xs,
                                        const std::vector<long>& Ms);

/// Least-squares slope of log(y) on log(x).
double log_log_slope(const std::vector<std::pair<double, double>>& points);

/// One verification record, serialised as a JSON line by the CLI.
struct ExtremizerReport {
    std::string kind;
    long M = 0;
    long N = 0;
    std::optional<double> eta;
    std::optional<MixedExponents> exponents;
    double lower = 0.0;  // certified (or grid-derived, for the chirp) lower bound on the ratio
    double upper = 0.0;  // upper_bound_magnitude, when exponents are given
    double ratio = 0.0;  // lower / upper
    std::optional<double> measured;  // quadrature ratio ||T A||_{r,s} / ||A||_{p,q}
    std::optional<double> residual;
    std::optional<double> min_normalized;  // chirp: min |T B| / sqrt(MN) on the sub-square
    std::optional<std::string> warning;
};

/// Minimum of |T B| / sqrt(MN) over a points x points grid on [eta, 1-eta]^2,
/// evaluated through the product of two one-dimensional chirp sums. With
/// exponents, lower = min |T B| (1-2 eta)^{gamma+delta} / (M^alpha N^beta).
ExtremizerReport verify_chirp_lower(long M, long N, double eta, long points,
                                    const std::optional<MixedExponents>& e = std::nullopt);

/// sin(pi M x)/sin(pi x) >= sin(1) M at 64 equispaced interior points of
/// [0, 1/(pi M)] plus both endpoints. Returns the smallest margin
/// ratio - sin(1) M; throws InvariantViolation if any point fails.
double check_dirichlet_inequality(long M);

/// Sample points used by check_dirichlet_inequality.
std::vector<double> dirichlet_sample_points(long M);

/// Certified lower bound on ||T K||_{r,s} / ||K||_{p,q} for K in {C, R, D}.
double dirichlet_certified_lower(const ExtremizerKind& kind, long M, long N,
                                 const MixedExponents& e);

/// Runs the pointwise check, the certified bound, and (when quad is given) the
/// measured quadrature ratio. Throws InvariantViolation if lower > upper.
ExtremizerReport verify_dirichlet_lower(const ExtremizerKind& kind, long M, long N,
                                        const MixedExponents& e,
                                        const std::optional<QuadratureSpec>& quad = std::nullopt);

/// ||T E||_{r,s} against ||E||_{p,q} = |value| on an oversampled grid.
ExtremizerReport unit_sharpness(const UnitE& unit, long M, long N, const MixedExponents& e,
                                const QuadratureSpec& quad = {});

}  // namespace mnl
