#include "mnl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mnl/errors.hpp"
#include "mnl/summation.hpp"

namespace mnl {

namespace {

void require_finite(std::span<const cdouble> values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ValidationError(std::string(what) + " contains a non-finite value");
        }
    }
}

void require_dims(long a, long b, const char* what) {
    if (a < 1 || b < 1) {
        std::ostringstream os;
        os << what << " dimensions must be positive, got " << a << " x " << b;
        throw ValidationError(os.str());
    }
}

}  // namespace

CoefficientMatrix::CoefficientMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
    require_dims(rows, cols, "matrix");
    entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
}

CoefficientMatrix::CoefficientMatrix(long rows, long cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require_dims(rows, cols, "matrix");
    if (entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw ValidationError("matrix entry count does not equal M*N");
    }
    require_finite(entries_, "matrix");
}

bool CoefficientMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const cdouble& v) { return v == cdouble{}; });
}

double CoefficientMatrix::frobenius() const {
    std::vector<double> mags(entries_.size());
    std::transform(entries_.begin(), entries_.end(), mags.begin(),
                   [](const cdouble& v) { return std::abs(v); });
    return power_norm(mags, 0.5, 1.0);
}

GridFunction::GridFunction(long kx, long ky) : kx_(kx), ky_(ky) {
    require_dims(kx, ky, "grid");
    samples_.assign(static_cast<std::size_t>(kx) * static_cast<std::size_t>(ky), 0.0);
}

GridFunction::GridFunction(long kx, long ky, std::vector<cdouble> samples)
    : kx_(kx), ky_(ky), samples_(std::move(samples)) {
    require_dims(kx, ky, "grid");
    if (samples_.size() != static_cast<std::size_t>(kx) * static_cast<std::size_t>(ky)) {
        throw ValidationError("grid sample count does not equal Kx*Ky");
    }
    require_finite(samples_, "grid");
}

GridFunction GridFunction::coarsened() const {
    const long sx = kx_ % 2 == 0 ? 2 : 1;
    const long sy = ky_ % 2 == 0 ? 2 : 1;
    GridFunction out(kx_ / sx, ky_ / sy);
    for (long j = 0; j < out.kx(); ++j) {
        for (long k = 0; k < out.ky(); ++k) out(j, k) = (*this)(j * sx, k * sy);
    }
    return out;
}

void QuadratureSpec::validate() const {
    if (oversample < 2) throw ValidationError("quadrature oversample must be >= 2");
    if (!(rel_tol > 0.0)) throw ValidationError("quadrature rel_tol must be positive");
}

double power_norm(std::span<const double> magnitudes, double recip, double divisor) {
    double peak = 0.0;
    for (double v : magnitudes) peak = std::max(peak, v);
    if (recip == 0.0 || peak == 0.0) return peak;
    const double power = 1.0 / recip;
    CompensatedSum acc;
    if (power == 1.0) {
        for (double v : magnitudes) acc.add(v / peak);
    } else if (power == 2.0) {
        for (double v : magnitudes) {
            const double t = v / peak;
            acc.add(t * t);
        }
    } else {
        for (double v : magnitudes) acc.add(std::pow(v / peak, power));
    }
    return peak * std::pow(acc.value() / divisor, recip);
}

double lpq_norm(const CoefficientMatrix& A, const MixedExponents& e) {
    const long M = A.rows(), N = A.cols();
    std::vector<double> column(static_cast<std::size_t>(M));
    std::vector<double> inner(static_cast<std::size_t>(N));
    for (long n = 0; n < N; ++n) {
        for (long m = 0; m < M; ++m) column[static_cast<std::size_t>(m)] = std::abs(A(m, n));
        inner[static_cast<std::size_t>(n)] = power_norm(column, e.alpha(), 1.0);
    }
    return power_norm(inner, e.beta(), 1.0);
}

namespace {

double grid_lrs(const GridFunction& f, double gamma, double delta) {
    const long kx = f.kx(), ky = f.ky();
    std::vector<double> slice(static_cast<std::size_t>(kx));
    std::vector<double> inner(static_cast<std::size_t>(ky));
    for (long k = 0; k < ky; ++k) {
        for (long j = 0; j < kx; ++j) slice[static_cast<std::size_t>(j)] = std::abs(f(j, k));
        inner[static_cast<std::size_t>(k)] = power_norm(slice, gamma, static_cast<double>(kx));
    }
    return power_norm(inner, delta, static_cast<double>(ky));
}

}  // namespace

GridNorm lrs_norm(const GridFunction& f, const MixedExponents& e, const QuadratureSpec& spec) {
    spec.validate();
    GridNorm result;
    result.value = grid_lrs(f, e.gamma(), e.delta());
    const bool coarsenable = f.kx() % 2 == 0 || f.ky() % 2 == 0;
    if (spec.refine_check && coarsenable) {
        const double coarse = grid_lrs(f.coarsened(), e.gamma(), e.delta());
        result.coarse_value = coarse;
        const double scale = std::max(std::abs(result.value), std::abs(coarse));
        if (scale > 0.0 && std::abs(result.value - coarse) > spec.rel_tol * scale) {
            std::ostringstream os;
            os.precision(10);
            os << "quadrature refinement check failed: fine " << result.value << " vs coarse "
               << coarse << " (rel_tol " << spec.rel_tol << ")";
            result.warning = os.str();
        }
    }
    return result;
}

HolderPair holder_matrix_chain(const CoefficientMatrix& A, const MixedExponents& e,
                               const MixedExponents& e_bar) {
    HolderPair pair{};
    pair.lhs = lpq_norm(A, e);
    if (e.alpha() >= e_bar.alpha() && (e.alpha() > e_bar.alpha() || e.beta() <= e_bar.beta())) {
        const auto mid = MixedExponents::from_reciprocals(e_bar.alpha(), e.beta(), e.gamma(),
                                                          e.delta());
        pair.rhs = std::pow(static_cast<double>(A.rows()), e.alpha() - e_bar.alpha()) *
                   lpq_norm(A, mid);
    } else if (e.beta() >= e_bar.beta()) {
        const auto mid = MixedExponents::from_reciprocals(e.alpha(), e_bar.beta(), e.gamma(),
                                                          e.delta());
        pair.rhs = std::pow(static_cast<double>(A.cols()), e.beta() - e_bar.beta()) *
                   lpq_norm(A, mid);
    } else {
        throw ValidationError(
            "holder_matrix_chain needs p <= p_bar (alpha >= alpha_bar) or q <= q_bar");
    }
    if (pair.lhs > pair.rhs * (1.0 + 1e-12)) {
        std::ostringstream os;
        os.precision(17);
        os << "Hoelder nesting violated: " << pair.lhs << " > " << pair.rhs;
        throw InvariantViolation(os.str());
    }
    return pair;
}

}  // namespace mnl
