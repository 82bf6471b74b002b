#include "mnl/extremizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mnl/errors.hpp"
#include "mnl/summation.hpp"
#include "mnl/trigsum.hpp"

namespace mnl {

namespace {

constexpr double kPi = std::numbers::pi;

void require_eta(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("eta must lie in (0,1)");
}

void require_index(long i, long bound, const char* what) {
    if (i < 0 || i >= bound) {
        std::ostringstream os;
        os << what << " index " << i << " is outside [0, " << bound << ")";
        throw ValidationError(os.str());
    }
}

void require_nonzero(cdouble v) {
    if (v == cdouble{} || !std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw ValidationError("extremizer value must be a finite nonzero complex number");
    }
}

/// e^{2 pi i t} with t reduced modulo 1 in extended precision.
cdouble unit_phase(long double t) {
    const long double frac = t - std::floor(t);
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(frac));
}

double measured_ratio(const CoefficientMatrix& A, const MixedExponents& e,
                      const QuadratureSpec& quad, std::optional<std::string>& warning) {
    quad.validate();
    EvalPlan plan;
    plan.kx = quad.oversample * A.rows();
    plan.ky = quad.oversample * A.cols();
    plan.path = EvalPath::ZeroPadTransform;
    const auto norm = lrs_norm(eval_sum(A, plan), e, quad);
    if (norm.warning) warning = norm.warning;
    return norm.value / lpq_norm(A, e);
}

}  // namespace

std::string kind_name(const ExtremizerKind& kind) {
    struct Visitor {
        std::string operator()(const ChirpB&) const { return "chirp"; }
        std::string operator()(const ColumnC&) const { return "column"; }
        std::string operator()(const RowR&) const { return "row"; }
        std::string operator()(const OnesD&) const { return "ones"; }
        std::string operator()(const UnitE&) const { return "unit"; }
    };
    return std::visit(Visitor{}, kind);
}

CoefficientMatrix build(const ExtremizerKind& kind, long M, long N) {
    CoefficientMatrix A(M, N);
    if (const auto* b = std::get_if<ChirpB>(&kind)) {
        require_eta(b->eta);
        for (long j = 0; j < M; ++j) {
            for (long k = 0; k < N; ++k) {
                // e^{-(pi/2) eta i (j^2/M + k^2/N)} = e^{2 pi i t}, t = -(eta/4)(j^2/M + k^2/N).
                const long double t =
                    -static_cast<long double>(b->eta) / 4.0L *
                    (static_cast<long double>(j) * j / M + static_cast<long double>(k) * k / N);
                A(j, k) = unit_phase(t);
            }
        }
    } else if (const auto* c = std::get_if<ColumnC>(&kind)) {
        require_index(c->k, N, "column");
        require_nonzero(c->value);
        for (long j = 0; j < M; ++j) A(j, c->k) = c->value;
    } else if (const auto* r = std::get_if<RowR>(&kind)) {
        require_index(r->j, M, "row");
        require_nonzero(r->value);
        for (long k = 0; k < N; ++k) A(r->j, k) = r->value;
    } else if (const auto* d = std::get_if<OnesD>(&kind)) {
        require_nonzero(d->value);
        for (auto& v : A.entries()) v = d->value;
    } else if (const auto* u = std::get_if<UnitE>(&kind)) {
        require_index(u->m, M, "row");
        require_index(u->n, N, "column");
        require_nonzero(u->value);
        A(u->m, u->n) = u->value;
    }
    return A;
}

ChirpParams::ChirpParams(long M, double eta, double x) : M_(M), eta_(eta), x_(x) {
    if (M < 1) throw ValidationError("chirp length M must be positive");
    require_eta(eta);
    if (!(x >= eta && x <= 1.0 - eta)) {
        std::ostringstream os;
        os << "chirp point x = " << x << " is outside [eta, 1-eta] = [" << eta << ", "
           << 1.0 - eta << "]";
        throw ValidationError(os.str());
    }
}

cdouble chirp_series(long M, double eta, double x) {
    if (M < 1) throw ValidationError("chirp length M must be positive");
    require_eta(eta);
    const long double xl = x;
    const long double q = static_cast<long double>(eta) / (4.0L * static_cast<long double>(M));
    CompensatedComplexSum acc;
    for (long m = 0; m < M; ++m) {
        const long double ml = static_cast<long double>(m);
        acc.add(unit_phase(ml * xl - q * ml * ml));
    }
    return acc.value();
}

cdouble chirp_sum(const ChirpParams& params) {
    return chirp_series(params.M(), params.eta(), params.x());
}

cdouble chirp_main_term(const ChirpParams& params) {
    const long double M = params.M();
    const long double x = params.x();
    const long double t = M * x * x / static_cast<long double>(params.eta()) - 0.125L;
    return std::sqrt(2.0 * static_cast<double>(params.M()) / params.eta()) * unit_phase(t);
}

double log_log_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw ValidationError("a slope needs at least two points");
    CompensatedSum sx, sy;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0)) throw ValidationError("log-log fit needs positive data");
        sx.add(std::log(x));
        sy.add(std::log(y));
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx.value() / n, my = sy.value() / n;
    CompensatedSum sxy, sxx;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        sxy.add(dx * (std::log(y) - my));
        sxx.add(dx * dx);
    }
    if (sxx.value() == 0.0) throw ValidationError("log-log fit needs distinct abscissae");
    return sxy.value() / sxx.value();
}

ChirpResidualSweep chirp_residual_sweep(double eta, const std::vector<double>& xs,
                                        const std::vector<long>& Ms) {
    if (xs.empty() || Ms.empty()) throw ValidationError("chirp sweep needs x values and M values");
    ChirpResidualSweep sweep;
    sweep.eta = eta;
    sweep.predicted_normalized = std::sqrt(2.0 / eta);
    std::vector<std::pair<double, double>> fit;
    for (long M : Ms) {
        double worst = 0.0;
        double nmin = std::numeric_limits<double>::infinity(), nmax = 0.0;
        for (double x : xs) {
            const ChirpParams params(M, eta, x);
            const cdouble sum = chirp_sum(params);
            ChirpResidualRow row;
            row.M = M;
            row.x = x;
            row.modulus = std::abs(sum);
            row.normalized_modulus = row.modulus / std::sqrt(static_cast<double>(M));
            row.residual = std::abs(sum - chirp_main_term(params));
            worst = std::max(worst, row.residual);
            nmin = std::min(nmin, row.normalized_modulus);
            nmax = std::max(nmax, row.normalized_modulus);
            sweep.rows.push_back(row);
        }
        sweep.max_residual.emplace_back(M, worst);
        fit.emplace_back(static_cast<double>(M), worst);
        sweep.normalized_min = nmin;
        sweep.normalized_max = nmax;
    }
    sweep.slope = fit.size() >= 2 ? log_log_slope(fit) : 0.0;
    return sweep;
}

ExtremizerReport verify_chirp_lower(long M, long N, double eta, long points,
                                    const std::optional<MixedExponents>& e) {
    if (M < 1 || N < 1) throw ValidationError("M and N must be positive");
    require_eta(eta);
    if (points < 2) throw ValidationError("chirp grid needs at least two points per axis");

    auto min_modulus = [&](long len) {
        double best = std::numeric_limits<double>::infinity();
        for (long i = 0; i < points; ++i) {
            const double x = eta + (1.0 - 2.0 * eta) * static_cast<double>(i) /
                                       static_cast<double>(points - 1);
            best = std::min(best, std::abs(chirp_series(len, eta, x)));
        }
        return best;
    };
    // |T B (x,y)| factors as |chirp_M(x)| |chirp_N(y)|, so the grid minimum factors too.
    const double min_tb = min_modulus(M) * min_modulus(N);

    ExtremizerReport rep;
    rep.kind = "chirp";
    rep.M = M;
    rep.N = N;
    rep.eta = eta;
    rep.exponents = e;
    rep.min_normalized = min_tb / std::sqrt(static_cast<double>(M) * static_cast<double>(N));
    // No stationary point on [eta, 1-eta], so the sums stay O(1) rather than ~ sqrt(M).
    if (*rep.min_normalized < 0.5 * (2.0 / eta)) {
        rep.warning = "chirp modulus is far below the sqrt(2M/eta) main term; not a sqrt(MN) lower bound";
    }
    if (e) {
        rep.lower = min_tb * std::pow(1.0 - 2.0 * eta, e->gamma() + e->delta()) /
                    (std::pow(static_cast<double>(M), e->alpha()) *
                     std::pow(static_cast<double>(N), e->beta()));
        rep.upper = upper_bound_magnitude(M, N, *e);
        rep.ratio = rep.lower / rep.upper;
    } else {
        rep.lower = *rep.min_normalized;
        rep.ratio = *rep.min_normalized;
    }
    return rep;
}

std::vector<double> dirichlet_sample_points(long M) {
    const double right = 1.0 / (kPi * static_cast<double>(M));
    std::vector<double> xs;
    xs.reserve(66);
    xs.push_back(0.0);
    for (int i = 1; i <= 64; ++i) xs.push_back(right * static_cast<double>(i) / 65.0);
    xs.push_back(right);
    return xs;
}

double check_dirichlet_inequality(long M) {
    if (M < 1) throw ValidationError("M must be positive");
    const double floor_value = std::sin(1.0) * static_cast<double>(M);
    double margin = std::numeric_limits<double>::infinity();
    for (double x : dirichlet_sample_points(M)) {
        const double value = dirichlet_ratio(M, x);
        if (!(value >= floor_value)) {
            std::ostringstream os;
            os.precision(17);
            os << "Dirichlet inequality failed at M = " << M << ", x = " << x << ": " << value
               << " < " << floor_value;
            throw InvariantViolation(os.str());
        }
        margin = std::min(margin, value - floor_value);
    }
    return margin;
}

double dirichlet_certified_lower(const ExtremizerKind& kind, long M, long N,
                                 const MixedExponents& e) {
    const double s1 = std::sin(1.0);
    const double m = static_cast<double>(M), n = static_cast<double>(N);
    const double col = s1 / std::pow(kPi, e.gamma()) * std::pow(m, 1.0 - e.gamma() - e.alpha());
    const double row = s1 / std::pow(kPi, e.delta()) * std::pow(n, 1.0 - e.delta() - e.beta());
    if (std::holds_alternative<ColumnC>(kind)) return col;
    if (std::holds_alternative<RowR>(kind)) return row;
    if (std::holds_alternative<OnesD>(kind)) return col * row;
    throw ValidationError("certified Dirichlet bounds exist only for column, row and ones");
}

ExtremizerReport verify_dirichlet_lower(const ExtremizerKind& kind, long M, long N,
                                        const MixedExponents& e,
                                        const std::optional<QuadratureSpec>& quad) {
    const auto A = build(kind, M, N);
    if (std::holds_alternative<ColumnC>(kind) || std::holds_alternative<OnesD>(kind)) {
        check_dirichlet_inequality(M);
    }
    if (std::holds_alternative<RowR>(kind) || std::holds_alternative<OnesD>(kind)) {
        check_dirichlet_inequality(N);
    }

    ExtremizerReport rep;
    rep.kind = kind_name(kind);
    rep.M = M;
    rep.N = N;
    rep.exponents = e;
    rep.lower = dirichlet_certified_lower(kind, M, N, e);
    rep.upper = upper_bound_magnitude(M, N, e);
    rep.ratio = rep.lower / rep.upper;
    if (rep.lower > rep.upper * (1.0 + 1e-12)) {
        std::ostringstream os;
        os.precision(17);
        os << rep.kind << " certified lower bound " << rep.lower << " exceeds the upper bound "
           << rep.upper;
        throw InvariantViolation(os.str());
    }
    if (quad) rep.measured = measured_ratio(A, e, *quad, rep.warning);
    return rep;
}

ExtremizerReport unit_sharpness(const UnitE& unit, long M, long N, const MixedExponents& e,
                                const QuadratureSpec& quad) {
    const auto A = build(unit, M, N);
    ExtremizerReport rep;
    rep.kind = "unit";
    rep.M = M;
    rep.N = N;
    rep.exponents = e;
    rep.lower = 1.0;
    rep.upper = upper_bound_magnitude(M, N, e);
    rep.ratio = rep.lower / rep.upper;
    rep.measured = measured_ratio(A, e, quad, rep.warning);
    return rep;
}

}  // namespace mnl
