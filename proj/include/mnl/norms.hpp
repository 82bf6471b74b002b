#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mnl/exponents.hpp"

namespace mnl {

using cdouble = std::complex<double>;

/// Complex M x N coefficient matrix. Row index m (the p-summed index) is the
/// slow index of the row-major storage.
class CoefficientMatrix {
public:
    CoefficientMatrix(long rows, long cols);
    CoefficientMatrix(long rows, long cols, std::vector<cdouble> entries);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    cdouble& operator()(long m, long n) { return entries_[index(m, n)]; }
    const cdouble& operator()(long m, long n) const { return entries_[index(m, n)]; }

    std::span<cdouble> entries() { return entries_; }
    std::span<const cdouble> entries() const { return entries_; }

    bool is_zero() const;
    /// Frobenius norm, i.e. the l^{2,2} norm.
    double frobenius() const;

private:
    std::size_t index(long m, long n) const {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(n);
    }

    long rows_;
    long cols_;
    std::vector<cdouble> entries_;
};

/// Samples f(j/Kx, k/Ky), 0 <= j < Kx, 0 <= k < Ky, stored with k fastest.
class GridFunction {
public:
    GridFunction(long kx, long ky);
    GridFunction(long kx, long ky, std::vector<cdouble> samples);

    long kx() const { return kx_; }
    long ky() const { return ky_; }

    cdouble& operator()(long j, long k) { return samples_[index(j, k)]; }
    const cdouble& operator()(long j, long k) const { return samples_[index(j, k)]; }

    std::span<cdouble> samples() { return samples_; }
    std::span<const cdouble> samples() const { return samples_; }

    /// Every other sample in each even dimension; odd dimensions are kept.
    GridFunction coarsened() const;

private:
    std::size_t index(long j, long k) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(ky_) +
               static_cast<std::size_t>(k);
    }

    long kx_;
    long ky_;
    std::vector<cdouble> samples_;
};

struct QuadratureSpec {
    long oversample = 8;
    bool refine_check = false;
    double rel_tol = 1e-3;

    void validate() const;
};

struct GridNorm {
    double value = 0.0;
    /// Present when refine_check ran and a coarse grid was available.
    std::optional<double> coarse_value;
    /// Set when the coarse and fine values disagree beyond rel_tol.
    std::optional<std::string> warning;
};

/// (sum |v|^(1/recip) / divisor)^recip, or max |v| when recip == 0.
/// Scaled by the maximum first, so recip near 0 does not overflow.
double power_norm(std::span<const double> magnitudes, double recip, double divisor);

/// Discrete mixed norm: p-norm over m inside, q-norm over n outside.
double lpq_norm(const CoefficientMatrix& A, const MixedExponents& e);

/// Continuous mixed norm on [0,1]^2 by the periodic rectangle rule: r-norm in x
/// inside, s-norm in y outside. Uses only gamma and delta of e.
GridNorm lrs_norm(const GridFunction& f, const MixedExponents& e,
                  const QuadratureSpec& spec = {});

struct HolderPair {
    double lhs;
    double rhs;
};

/// Returns (||A||_{p,q}, M^{alpha - alpha_bar} ||A||_{p_bar,q}) when e.alpha >
/// e_bar.alpha, else the N-power pair in the second slot. Throws
/// InvariantViolation if lhs > rhs beyond 1e-12 relative.
HolderPair holder_matrix_chain(const CoefficientMatrix& A, const MixedExponents& e,
                               const MixedExponents& e_bar);

}  // namespace mnl
