#include "mnl/exponents.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mnl/errors.hpp"

namespace mnl {

namespace {

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << "reciprocal exponent " << name << " = " << v << " is outside [0,1]";
        throw ValidationError(os.str());
    }
}

double exponent_of(double recip) {
    return recip == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / recip;
}

bool ge(double a, double b) { return a >= b - kRegionSlack; }
bool le(double a, double b) { return a <= b + kRegionSlack; }

bool in_region(Branch b, double a, double be, double g, double d) {
    switch (b) {
        case Branch::Half:
            // "1/2 <= gamma >= 1" in print; the only reading compatible with
            // gamma in [0,1] is 1/2 <= gamma <= 1.
            return le(a, 0.5) && le(be, 0.5) && ge(g, 0.5) && ge(d, 0.5);
        case Branch::Alpha:
            return ge(a, 0.5) && ge(a, be) && ge(a + g, 1.0) && ge(a + d, 1.0);
        case Branch::Beta:
            return ge(be, 0.5) && ge(be, a) && ge(be + g, 1.0) && ge(be + d, 1.0);
        case Branch::OneMinusGamma:
            return le(g, 0.5) && le(g, d) && le(a + g, 1.0) && le(be + g, 1.0);
        case Branch::OneMinusDelta:
            return le(d, 0.5) && le(d, g) && le(a + d, 1.0) && le(be + d, 1.0);
    }
    return false;
}

constexpr Branch kBranchOrder[] = {Branch::Half, Branch::Alpha, Branch::Beta,
                                   Branch::OneMinusGamma, Branch::OneMinusDelta};

}  // namespace

MixedExponents MixedExponents::from_reciprocals(double alpha, double beta, double gamma,
                                                double delta) {
    require_unit(alpha, "alpha");
    require_unit(beta, "beta");
    require_unit(gamma, "gamma");
    require_unit(delta, "delta");
    return MixedExponents(alpha, beta, gamma, delta);
}

MixedExponents MixedExponents::from_exponents(double p, double q, double r, double s) {
    return from_reciprocals(reciprocal_of(p), reciprocal_of(q), reciprocal_of(r),
                            reciprocal_of(s));
}

double MixedExponents::p() const { return exponent_of(alpha_); }
double MixedExponents::q() const { return exponent_of(beta_); }
double MixedExponents::r() const { return exponent_of(gamma_); }
double MixedExponents::s() const { return exponent_of(delta_); }

double reciprocal_of(double exponent) {
    if (std::isnan(exponent) || exponent < 1.0) {
        std::ostringstream os;
        os << "Lebesgue exponent " << exponent << " is outside [1, inf]";
        throw ValidationError(os.str());
    }
    return std::isinf(exponent) ? 0.0 : 1.0 / exponent;
}

double parse_exponent(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("cannot parse exponent '" + text + "'");
    }
    if (used != text.size()) throw ValidationError("cannot parse exponent '" + text + "'");
    reciprocal_of(v);
    return v;
}

const char* to_string(Branch b) {
    switch (b) {
        case Branch::Half: return "Half";
        case Branch::Alpha: return "Alpha";
        case Branch::Beta: return "Beta";
        case Branch::OneMinusGamma: return "OneMinusGamma";
        case Branch::OneMinusDelta: return "OneMinusDelta";
    }
    return "?";
}

double branch_value(Branch b, const MixedExponents& e) {
    switch (b) {
        case Branch::Half: return 0.5;
        case Branch::Alpha: return e.alpha();
        case Branch::Beta: return e.beta();
        case Branch::OneMinusGamma: return 1.0 - e.gamma();
        case Branch::OneMinusDelta: return 1.0 - e.delta();
    }
    return 0.0;
}

RegionLabel classify(const MixedExponents& e) {
    RegionLabel label{Branch::Half, {}};
    for (Branch b : kBranchOrder) {
        if (in_region(b, e.alpha(), e.beta(), e.gamma(), e.delta())) {
            label.all_matching.push_back(b);
        }
    }
    if (label.all_matching.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "no exponent region contains (" << e.alpha() << ", " << e.beta() << ", "
           << e.gamma() << ", " << e.delta() << ")";
        throw CoverageViolation(os.str());
    }
    label.branch = label.all_matching.front();
    return label;
}

double theta(const MixedExponents& e) { return branch_value(classify(e).branch, e); }

std::optional<double> phi(const MixedExponents& e) {
    const double a = e.alpha(), b = e.beta(), g = e.gamma(), d = e.delta();
    auto eq = [](double x, double y) { return std::abs(x - y) <= kSliceTolerance; };

    if (in_region(Branch::Half, a, b, g, d)) return 0.5;
    if (ge(a, 0.5) && ge(a, b) && ge(a + g, 1.0) && eq(a + d, 1.0)) return a;
    if (ge(a, 0.5) && eq(a, b) && a + g > 1.0 && a + d > 1.0) return std::sqrt(a * b);
    if (ge(b, 0.5) && ge(b, a) && eq(b + g, 1.0) && ge(b + d, 1.0)) return b;
    if (le(g, 0.5) && eq(g, d) && le(a + g, 1.0) && le(b + d, 1.0)) {
        return std::sqrt((1.0 - g) * (1.0 - d));
    }
    return std::nullopt;
}

double upper_bound_magnitude(long M, long N, const MixedExponents& e) {
    if (M < 1 || N < 1) throw ValidationError("M and N must be positive");
    const double m = static_cast<double>(M), n = static_cast<double>(N);
    return std::pow(m * n, theta(e)) / (std::pow(m, e.alpha()) * std::pow(n, e.beta()));
}

}  // namespace mnl
