#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mnl {

/// Lebesgue exponents (p, q, r, s) stored as reciprocals (alpha, beta, gamma, delta).
/// A reciprocal of 0 encodes an infinite exponent, so the admissible set is the
/// closed box [0,1]^4.
class MixedExponents {
public:
    /// Throws ValidationError unless every reciprocal lies in [0,1].
    static MixedExponents from_reciprocals(double alpha, double beta, double gamma, double delta);
    /// Exponents in [1, inf]; pass std::numeric_limits<double>::infinity() for inf.
    static MixedExponents from_exponents(double p, double q, double r, double s);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double delta() const { return delta_; }

    double p() const;
    double q() const;
    double r() const;
    double s() const;

    std::array<double, 4> reciprocals() const { return {alpha_, beta_, gamma_, delta_}; }

    friend bool operator==(const MixedExponents&, const MixedExponents&) = default;

private:
    MixedExponents(double a, double b, double c, double d)
        : alpha_(a), beta_(b), gamma_(c), delta_(d) {}

    double alpha_;
    double beta_;
    double gamma_;
    double delta_;
};

/// Parses "2", "1.5", "inf" into an exponent value.
double parse_exponent(const std::string& text);
/// Reciprocal of an exponent in [1, inf].
double reciprocal_of(double exponent);

enum class Branch { Half, Alpha, Beta, OneMinusGamma, OneMinusDelta };

const char* to_string(Branch b);

struct RegionLabel {
    Branch branch;
    std::vector<Branch> all_matching;
};

/// Closed-region membership tests use this slack to absorb rounding in sums
/// like alpha + gamma; it is far below the 1e-12 agreement budget.
inline constexpr double kRegionSlack = 1e-14;
/// Equality slices of the asymptotic exponent (alpha + delta = 1 etc.).
inline constexpr double kSliceTolerance = 1e-12;

/// Every upper-bound branch whose constraints hold at e; branch is the first
/// match in declaration order. Throws CoverageViolation if nothing matches.
RegionLabel classify(const MixedExponents& e);

/// Value of the named branch's formula at e, regardless of whether e lies in
/// that branch's region.
double branch_value(Branch b, const MixedExponents& e);

/// Piecewise-linear exponent of the upper bound, in [1/2, 1].
double theta(const MixedExponents& e);

/// Exponent of the two-sided asymptotics; nullopt outside its domain.
std::optional<double> phi(const MixedExponents& e);

/// (MN)^theta / (M^alpha N^beta).
double upper_bound_magnitude(long M, long N, const MixedExponents& e);

}  // namespace mnl
