#pragma once

#include <cstdint>
#include <vector>

#include "mnl/norms.hpp"

namespace mnl {

enum class EvalPath { Direct, ZeroPadTransform };

/// TwoPi: terms e^{2 pi i ((m-1)x + (n-1)y)}. One: terms e^{i ((m-1)x + (n-1)y)},
/// which are not orthogonal on [0,1]^2.
enum class FrequencyScale { TwoPi, One };

struct EvalPlan {
    long kx = 0;
    long ky = 0;
    EvalPath path = EvalPath::Direct;
    FrequencyScale scale = FrequencyScale::TwoPi;

    /// Throws ValidationError if the plan cannot be used for an M x N matrix.
    void validate(long M, long N) const;
};

/// Samples of S_{M,N}(j/Kx, k/Ky). Requires plan.scale == TwoPi.
GridFunction eval_sum(const CoefficientMatrix& A, const EvalPlan& plan);

/// Direct double sum at one arbitrary point.
cdouble eval_sum_at(const CoefficientMatrix& A, double x, double y,
                    FrequencyScale scale = FrequencyScale::TwoPi);

/// Samples of V_{M,N}(j/Kx, k/Ky). Direct path only; requires plan.scale == One.
GridFunction eval_nonortho(const CoefficientMatrix& A, const EvalPlan& plan);

struct NonorthoRow {
    long size = 0;  // M = N
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
};

struct NonorthoSweep {
    std::vector<NonorthoRow> rows;
    /// Largest ||V||_{L^{2,2}} / ||A||_{l^{2,2}} seen anywhere.
    double empirical_constant = 0.0;
    /// Max ratio at the largest size is within 10% of the max at the next size.
    bool bounded = true;
};

/// Ratio ||V||_{L^{2,2}} / ||A||_{l^{2,2}} for `samples` complex Gaussian
/// matrices per size, on an oversample*size grid. Sizes must be increasing.
NonorthoSweep nonortho_ratio_sweep(const std::vector<long>& sizes, long samples,
                                   std::uint64_t seed, long oversample = 16);

/// e^{pi i (M-1) x} sin(pi M x) / sin(pi x), with the limit value at integer x.
cdouble dirichlet_closed_form(long M, double x);

/// sin(pi M x) / sin(pi x), with the limit at integer x.
double dirichlet_ratio(long M, double x);

}  // namespace mnl
