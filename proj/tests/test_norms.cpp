#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "mnl/errors.hpp"
#include "mnl/norms.hpp"
#include "mnl/trigsum.hpp"
#include "support.hpp"

using namespace mnl;
using mnl::testing::Gen;
using mnl::testing::rel_diff;

namespace {

MixedExponents R(double a, double b, double c, double d) {
    return MixedExponents::from_reciprocals(a, b, c, d);
}

CoefficientMatrix ones(long M, long N) {
    CoefficientMatrix A(M, N);
    for (auto& v : A.entries()) v = 1.0;
    return A;
}

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("matrix and grid containers validate their shape") {
    CHECK_THROWS_AS(CoefficientMatrix(0, 3), ValidationError);
    CHECK_THROWS_AS(CoefficientMatrix(2, 2, std::vector<cdouble>(3)), ValidationError);
    CHECK_THROWS_AS(CoefficientMatrix(1, 1, {cdouble(std::nan(""), 0.0)}), ValidationError);
    CHECK_THROWS_AS(GridFunction(4, 4, std::vector<cdouble>(15)), ValidationError);
    CHECK_THROWS_AS((QuadratureSpec{1, false, 1e-3}.validate()), ValidationError);
    CHECK_THROWS_AS((QuadratureSpec{8, false, 0.0}.validate()), ValidationError);
}

TEST_CASE("lpq_norm examples") {
    Gen g(3);
    for (int i = 0; i < 20; ++i) {
        CoefficientMatrix one(1, 1, {cdouble(0.6, -0.8)});
        CHECK(lpq_norm(one, g.exponents()) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(lpq_norm(ones(2, 2), MixedExponents::from_exponents(2, 2, 2, 2)) == doctest::Approx(2.0));
    CoefficientMatrix col(2, 1, {3.0, 4.0});
    CHECK(lpq_norm(col, MixedExponents::from_exponents(2, 7, 2, 2)) == doctest::Approx(5.0));
    CHECK(lpq_norm(CoefficientMatrix(3, 2), g.exponents()) == 0.0);
}

TEST_CASE("lpq_norm uses p down columns and q across them") {
    // Column norms under p = 1 are 1+2 = 3 and 3+4 = 7.
    CoefficientMatrix A(2, 2, {1.0, 3.0, 2.0, 4.0});
    CHECK(lpq_norm(A, MixedExponents::from_exponents(1, kInf, 2, 2)) == doctest::Approx(7.0));
    // Column maxima 2 and 4 summed; the transposed convention would give 3 + 4.
    CHECK(lpq_norm(A, MixedExponents::from_exponents(kInf, 1, 2, 2)) == doctest::Approx(6.0));
    CHECK(lpq_norm(A, MixedExponents::from_exponents(kInf, kInf, 2, 2)) == doctest::Approx(4.0));
}

TEST_CASE("lpq_norm matches the literal formula") {
    Gen g(99);
    for (int i = 0; i < 300; ++i) {
        const auto A = g.matrix(g.integer(1, 9), g.integer(1, 9));
        const auto e = g.exponents();
        CHECK(rel_diff(lpq_norm(A, e), mnl::testing::naive_lpq(A, e.p(), e.q())) <= 1e-12);
    }
}

TEST_CASE("lrs_norm examples") {
    Gen g(4);
    GridFunction one(8, 6);
    for (auto& v : one.samples()) v = 1.0;
    GridFunction wave(16, 16);
    for (long j = 0; j < 16; ++j)
        for (long k = 0; k < 16; ++k) wave(j, k) = std::polar(1.0, 2.0 * std::numbers::pi * j / 16.0);
    for (int i = 0; i < 20; ++i) {
        const auto e = g.exponents();
        CHECK(lrs_norm(one, e).value == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(lrs_norm(wave, e).value == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("grid L^{2,2} norm of sampled S equals the l^{2,2} norm") {
    Gen g(8);
    const auto l22 = MixedExponents::from_exponents(2, 2, 2, 2);
    for (int i = 0; i < 40; ++i) {
        const long M = g.integer(1, 12), N = g.integer(1, 12);
        const auto A = g.matrix(M, N);
        for (long kx : {2 * M - 1, 2 * M}) {
            const long ky = i % 2 == 0 ? 2 * N - 1 : 2 * N;
            const auto S = eval_sum(A, {kx, ky, EvalPath::Direct, FrequencyScale::TwoPi});
            CHECK(rel_diff(lrs_norm(S, l22).value, lpq_norm(A, l22)) <= 1e-9);
        }
    }
}

TEST_CASE("lrs_norm uses r along x and s along y") {
    // f(x, y) = 2 on x < 1/2, 0 elsewhere; independent of y.
    GridFunction f(4, 2);
    f(0, 0) = f(0, 1) = f(1, 0) = f(1, 1) = 2.0;
    // L^1 in x gives 1 for every y, then any s gives 1.
    CHECK(lrs_norm(f, R(0.5, 0.5, 1.0, 0.0)).value == doctest::Approx(1.0));
    // L^inf in x gives 2.
    CHECK(lrs_norm(f, R(0.5, 0.5, 0.0, 1.0)).value == doctest::Approx(2.0));
    // L^2 in x gives sqrt(2).
    CHECK(lrs_norm(f, R(0.5, 0.5, 0.5, 0.3)).value == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("refinement check flags an under-resolved grid") {
    GridFunction spike(16, 16);
    spike(1, 1) = 100.0;
    QuadratureSpec spec{8, true, 1e-3};
    const auto res = lrs_norm(spike, R(0.5, 0.5, 0.5, 0.5), spec);
    REQUIRE(res.coarse_value.has_value());
    CHECK(*res.coarse_value == 0.0);
    CHECK(res.warning.has_value());

    GridFunction flat(16, 16);
    for (auto& v : flat.samples()) v = cdouble(0.0, 3.0);
    const auto ok = lrs_norm(flat, R(0.5, 0.5, 0.3, 0.9), spec);
    CHECK_FALSE(ok.warning.has_value());
    CHECK(ok.value == doctest::Approx(3.0));
}

TEST_CASE("grid norms nest like Hoelder: smaller r gives a smaller average") {
    Gen g(21);
    for (int i = 0; i < 300; ++i) {
        const long kx = g.integer(1, 20), ky = g.integer(1, 20);
        GridFunction f(kx, ky);
        for (auto& v : f.samples()) v = g.complex_gauss();
        const double c1 = g.uniform(), c2 = g.uniform(), d = g.uniform();
        const double big_r = std::min(c1, c2), small_r = std::max(c1, c2);  // reciprocals
        const double lo = lrs_norm(f, R(0.5, 0.5, small_r, d)).value;
        const double hi = lrs_norm(f, R(0.5, 0.5, big_r, d)).value;
        CHECK(lo <= hi + 1e-12 * hi);
        const double s1 = g.uniform(), s2 = g.uniform();
        const double lo_s = lrs_norm(f, R(0.5, 0.5, c1, std::max(s1, s2))).value;
        const double hi_s = lrs_norm(f, R(0.5, 0.5, c1, std::min(s1, s2))).value;
        CHECK(lo_s <= hi_s + 1e-12 * hi_s);
    }
}

TEST_CASE("matrix norms nest with the M and N powers") {
    Gen g(22);
    for (int i = 0; i < 500; ++i) {
        const auto A = g.matrix(g.integer(1, 10), g.integer(1, 10));
        const double a1 = g.uniform(), a2 = g.uniform(), b = g.uniform();
        const auto e = R(std::max(a1, a2), b, 0.5, 0.5);
        const auto e_bar = R(std::min(a1, a2), b, 0.5, 0.5);
        const auto pair = holder_matrix_chain(A, e, e_bar);
        CHECK(pair.lhs <= pair.rhs * (1.0 + 1e-12));

        const double b1 = g.uniform(), b2 = g.uniform(), a = g.uniform();
        const auto f = R(a, std::max(b1, b2), 0.5, 0.5);
        const auto f_bar = R(a, std::min(b1, b2), 0.5, 0.5);
        if (f.beta() > f_bar.beta()) {
            const auto p2 = holder_matrix_chain(A, f, f_bar);
            const double expected = std::pow(double(A.cols()), f.beta() - f_bar.beta()) *
                                    lpq_norm(A, R(a, f_bar.beta(), 0.5, 0.5));
            CHECK(p2.rhs == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("holder_matrix_chain examples") {
    const auto e11 = MixedExponents::from_exponents(1, 1, 2, 2);
    const auto e21 = MixedExponents::from_exponents(2, 1, 2, 2);
    const auto eq = holder_matrix_chain(ones(2, 2), e11, e21);
    CHECK(eq.lhs == doctest::Approx(4.0));
    CHECK(eq.rhs == doctest::Approx(4.0));

    CoefficientMatrix single(2, 2, {1.0, 0.0, 0.0, 0.0});
    const auto s = holder_matrix_chain(single, e11, e21);
    CHECK(s.lhs == doctest::Approx(1.0));
    CHECK(s.rhs == doctest::Approx(std::sqrt(2.0)));

    const auto z = holder_matrix_chain(CoefficientMatrix(2, 2), e11, e21);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);

    // Neither slot has the smaller exponent on the left.
    CHECK_THROWS_AS(holder_matrix_chain(single, R(0.2, 0.2, 0.5, 0.5), R(0.4, 0.4, 0.5, 0.5)),
                    ValidationError);
}

TEST_CASE("norms are absolutely homogeneous") {
    Gen g(23);
    for (int i = 0; i < 200; ++i) {
        auto A = g.matrix(g.integer(1, 8), g.integer(1, 8));
        const auto e = g.exponents();
        const cdouble c = g.complex_gauss();
        const double base = lpq_norm(A, e);
        GridFunction f(g.integer(1, 12), g.integer(1, 12));
        for (auto& v : f.samples()) v = g.complex_gauss();
        const double fbase = lrs_norm(f, e).value;
        for (auto& v : A.entries()) v *= c;
        for (auto& v : f.samples()) v *= c;
        CHECK(rel_diff(lpq_norm(A, e), std::abs(c) * base) <= 1e-12);
        CHECK(rel_diff(lrs_norm(f, e).value, std::abs(c) * fbase) <= 1e-12);
    }
}

TEST_CASE("sup norm and a huge finite exponent agree on unimodular data") {
    Gen g(24);
    GridFunction f(32, 32);
    for (auto& v : f.samples()) v = std::polar(1.0, g.uniform(0.0, 6.0));
    const double sup = lrs_norm(f, R(0.5, 0.5, 0.0, 0.0)).value;
    const double big = lrs_norm(f, R(0.5, 0.5, 1.0 / 1048576.0, 1.0 / 1048576.0)).value;
    CHECK(sup == doctest::Approx(1.0));
    CHECK(std::abs(sup - big) <= 0.01 * sup);

    // Non-constant modulus: the huge exponent still tracks the max.
    GridFunction h(16, 8);
    for (auto& v : h.samples()) v = g.complex_gauss();
    const double hs = lrs_norm(h, R(0.5, 0.5, 0.0, 0.0)).value;
    const double hb = lrs_norm(h, R(0.5, 0.5, 1.0 / 1048576.0, 1.0 / 1048576.0)).value;
    CHECK(std::abs(hs - hb) <= 0.01 * hs);
}
