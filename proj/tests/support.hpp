#pragma once

// Shared generators and brute-force oracles for the test binaries. Nothing in
// here calls into the library code paths it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mnl/exponents.hpp"
#include "mnl/norms.hpp"

namespace mnl::testing {

using cdouble = std::complex<double>;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
    cdouble complex_gauss() {
        const double re = gauss();
        return {re, gauss()};
    }

    /// Uniform point of [0,1]^4, with a 1-in-4 chance per coordinate of
    /// snapping to one of the special values 0, 1/2, 1.
    MixedExponents exponents(bool snap = true) {
        double v[4];
        for (double& c : v) {
            c = uniform();
            if (snap && integer(0, 3) == 0) c = 0.5 * static_cast<double>(integer(0, 2));
        }
        return MixedExponents::from_reciprocals(v[0], v[1], v[2], v[3]);
    }

    CoefficientMatrix matrix(long M, long N) {
        CoefficientMatrix A(M, N);
        for (auto& v : A.entries()) v = complex_gauss();
        return A;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Upper-bound exponent written as the maximum of its five branch values.
inline double theta_as_max(const MixedExponents& e) {
    return std::max({0.5, e.alpha(), e.beta(), 1.0 - e.gamma(), 1.0 - e.delta()});
}

/// Literal mixed norm with std::pow and a plain loop.
inline double naive_lpq(const CoefficientMatrix& A, double p, double q) {
    std::vector<double> inner;
    for (long n = 0; n < A.cols(); ++n) {
        double acc = 0.0;
        for (long m = 0; m < A.rows(); ++m) {
            const double v = std::abs(A(m, n));
            acc = std::isinf(p) ? std::max(acc, v) : acc + std::pow(v, p);
        }
        inner.push_back(std::isinf(p) ? acc : std::pow(acc, 1.0 / p));
    }
    double acc = 0.0;
    for (double v : inner) acc = std::isinf(q) ? std::max(acc, v) : acc + std::pow(v, q);
    return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

/// S_{M,N}(x, y) by the literal double sum with std::exp.
inline cdouble naive_sum(const CoefficientMatrix& A, double x, double y) {
    cdouble acc = 0.0;
    for (long m = 0; m < A.rows(); ++m) {
        for (long n = 0; n < A.cols(); ++n) {
            acc += A(m, n) * std::exp(cdouble(0.0, 2.0 * std::numbers::pi *
                                                        (static_cast<double>(m) * x +
                                                         static_cast<double>(n) * y)));
        }
    }
    return acc;
}

/// Exact ||V_{M,N}||_{L^{2,2}([0,1]^2)} through the Gram kernel
/// G(d) = int_0^1 e^{i d t} dt = (e^{i d} - 1) / (i d), G(0) = 1.
inline double exact_nonortho_l22(const CoefficientMatrix& A) {
    auto gram = [](long d) -> cdouble {
        if (d == 0) return 1.0;
        const double dd = static_cast<double>(d);
        return (std::exp(cdouble(0.0, dd)) - 1.0) / cdouble(0.0, dd);
    };
    cdouble acc = 0.0;
    for (long m1 = 0; m1 < A.rows(); ++m1)
        for (long n1 = 0; n1 < A.cols(); ++n1)
            for (long m2 = 0; m2 < A.rows(); ++m2)
                for (long n2 = 0; n2 < A.cols(); ++n2)
                    acc += A(m1, n1) * std::conj(A(m2, n2)) * gram(m1 - m2) * gram(n1 - n2);
    return std::sqrt(acc.real());
}

inline double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace mnl::testing
