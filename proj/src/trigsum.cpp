#include "mnl/trigsum.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "mnl/errors.hpp"
#include "mnl/summation.hpp"

namespace mnl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// table[f * K + j] = e^{i * omega(f, j)} for frequency f and grid index j.
std::vector<cdouble> phase_table(long freqs, long K, FrequencyScale scale) {
    std::vector<cdouble> table(static_cast<std::size_t>(freqs * K));
    if (scale == FrequencyScale::TwoPi) {
        std::vector<cdouble> roots(static_cast<std::size_t>(K));
        for (long t = 0; t < K; ++t) {
            roots[static_cast<std::size_t>(t)] =
                std::polar(1.0, kTwoPi * static_cast<double>(t) / static_cast<double>(K));
        }
        for (long f = 0; f < freqs; ++f) {
            for (long j = 0; j < K; ++j) {
                table[static_cast<std::size_t>(f * K + j)] = roots[static_cast<std::size_t>((f * j) % K)];
            }
        }
    } else {
        for (long f = 0; f < freqs; ++f) {
            for (long j = 0; j < K; ++j) {
                table[static_cast<std::size_t>(f * K + j)] =
                    std::polar(1.0, static_cast<double>(f) * static_cast<double>(j) /
                                        static_cast<double>(K));
            }
        }
    }
    return table;
}

GridFunction eval_direct(const CoefficientMatrix& A, const EvalPlan& plan) {
    const long M = A.rows(), N = A.cols(), kx = plan.kx, ky = plan.ky;
    const auto xt = phase_table(M, kx, plan.scale);
    const auto yt = phase_table(N, ky, plan.scale);

    // Partial sums over n: partial[m * ky + k] = sum_n a_{mn} e^{i w_n y_k}.
    std::vector<cdouble> partial(static_cast<std::size_t>(M * ky));
    for (long m = 0; m < M; ++m) {
        for (long k = 0; k < ky; ++k) {
            CompensatedComplexSum acc;
            for (long n = 0; n < N; ++n) acc.add(A(m, n) * yt[static_cast<std::size_t>(n * ky + k)]);
            partial[static_cast<std::size_t>(m * ky + k)] = acc.value();
        }
    }

    GridFunction out(kx, ky);
    for (long j = 0; j < kx; ++j) {
        for (long k = 0; k < ky; ++k) {
            CompensatedComplexSum acc;
            for (long m = 0; m < M; ++m) {
                acc.add(xt[static_cast<std::size_t>(m * kx + j)] *
                        partial[static_cast<std::size_t>(m * ky + k)]);
            }
            out(j, k) = acc.value();
        }
    }
    return out;
}

GridFunction eval_transform(const CoefficientMatrix& A, const EvalPlan& plan) {
    const long M = A.rows(), N = A.cols(), kx = plan.kx, ky = plan.ky;
    std::vector<cdouble> in(static_cast<std::size_t>(kx * ky), cdouble{});
    for (long m = 0; m < M; ++m) {
        for (long n = 0; n < N; ++n) in[static_cast<std::size_t>(m * ky + n)] = A(m, n);
    }
    std::vector<cdouble> out(in.size());
    auto* in_ptr = reinterpret_cast<fftw_complex*>(in.data());
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());

    fftw_plan p;
    {
        std::lock_guard lock(planner_mutex());
        p = fftw_plan_dft_2d(static_cast<int>(kx), static_cast<int>(ky), in_ptr, out_ptr,
                             FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (p == nullptr) throw std::runtime_error("FFTW could not create a 2-D plan");
    // The unnormalised backward transform is exactly sum a_{mn} e^{+2 pi i (mj/Kx + nk/Ky)}.
    fftw_execute(p);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
    return GridFunction(kx, ky, std::move(out));
}

}  // namespace

void EvalPlan::validate(long M, long N) const {
    if (kx < 1 || ky < 1) throw ValidationError("grid sizes must be positive");
    if (path == EvalPath::ZeroPadTransform) {
        if (scale != FrequencyScale::TwoPi) {
            throw ValidationError("the zero-padded transform only applies to 2*pi frequencies");
        }
        if (kx < M || ky < N) {
            std::ostringstream os;
            os << "zero-padded transform needs Kx >= M and Ky >= N (got " << kx << "x" << ky
               << " for " << M << "x" << N << ")";
            throw ValidationError(os.str());
        }
    }
}

GridFunction eval_sum(const CoefficientMatrix& A, const EvalPlan& plan) {
    if (plan.scale != FrequencyScale::TwoPi) {
        throw ValidationError("eval_sum needs the 2*pi frequency scale; use eval_nonortho");
    }
    plan.validate(A.rows(), A.cols());
    return plan.path == EvalPath::Direct ? eval_direct(A, plan) : eval_transform(A, plan);
}

GridFunction eval_nonortho(const CoefficientMatrix& A, const EvalPlan& plan) {
    if (plan.scale != FrequencyScale::One || plan.path != EvalPath::Direct) {
        throw ValidationError("eval_nonortho needs the unit frequency scale and the direct path");
    }
    plan.validate(A.rows(), A.cols());
    return eval_direct(A, plan);
}

cdouble eval_sum_at(const CoefficientMatrix& A, double x, double y, FrequencyScale scale) {
    CompensatedComplexSum acc;
    for (long n = 0; n < A.cols(); ++n) {
        for (long m = 0; m < A.rows(); ++m) {
            double angle;
            if (scale == FrequencyScale::TwoPi) {
                const double t = static_cast<double>(m) * x + static_cast<double>(n) * y;
                angle = kTwoPi * (t - std::floor(t));
            } else {
                angle = static_cast<double>(m) * x + static_cast<double>(n) * y;
            }
            acc.add(A(m, n) * std::polar(1.0, angle));
        }
    }
    return acc.value();
}

double dirichlet_ratio(long M, double x) {
    if (x == std::round(x)) {
        // Limit of sin(pi M x)/sin(pi x) at integer x is M (-1)^{(M-1)x}.
        const long parity = ((M - 1) * static_cast<long>(std::abs(x))) % 2;
        return parity == 0 ? static_cast<double>(M) : -static_cast<double>(M);
    }
    return std::sin(std::numbers::pi * static_cast<double>(M) * x) / std::sin(std::numbers::pi * x);
}

cdouble dirichlet_closed_form(long M, double x) {
    return std::polar(1.0, std::numbers::pi * static_cast<double>(M - 1) * x) * dirichlet_ratio(M, x);
}

NonorthoSweep nonortho_ratio_sweep(const std::vector<long>& sizes, long samples,
                                   std::uint64_t seed, long oversample) {
    if (sizes.empty() || samples < 1 || oversample < 1) {
        throw ValidationError("nonortho sweep needs sizes, samples >= 1 and oversample >= 1");
    }
    const auto l22 = MixedExponents::from_reciprocals(0.5, 0.5, 0.5, 0.5);
    NonorthoSweep sweep;
    for (long size : sizes) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(size)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);
        EvalPlan plan{oversample * size, oversample * size, EvalPath::Direct, FrequencyScale::One};
        NonorthoRow row;
        row.size = size;
        CompensatedSum total;
        for (long s = 0; s < samples; ++s) {
            CoefficientMatrix A(size, size);
            for (auto& v : A.entries()) {
                const double re = gauss(rng);
                v = {re, gauss(rng)};
            }
            const double ratio = lrs_norm(eval_nonortho(A, plan), l22).value / lpq_norm(A, l22);
            row.max_ratio = std::max(row.max_ratio, ratio);
            total.add(ratio);
        }
        row.mean_ratio = total.value() / static_cast<double>(samples);
        sweep.empirical_constant = std::max(sweep.empirical_constant, row.max_ratio);
        sweep.rows.push_back(row);
    }
    if (sweep.rows.size() >= 2) {
        const auto& last = sweep.rows[sweep.rows.size() - 1];
        const auto& prev = sweep.rows[sweep.rows.size() - 2];
        sweep.bounded = last.max_ratio <= 1.1 * prev.max_ratio;
    }
    return sweep;
}

}  // namespace mnl
