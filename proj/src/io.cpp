#include "mnl/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "mnl/errors.hpp"

namespace mnl::io {

namespace {

json complex_array(std::span<const cdouble> values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back({v.real(), v.imag()});
    return arr;
}

std::vector<cdouble> complex_values(const json& arr, const char* key) {
    if (!arr.is_array()) throw ValidationError(std::string("'") + key + "' must be an array");
    std::vector<cdouble> out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            throw ValidationError(std::string("each element of '") + key +
                                  "' must be a [re, im] pair of numbers");
        }
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

long positive_int(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_number_integer()) {
        throw ValidationError(std::string("missing integer field '") + key + "'");
    }
    const long v = doc.at(key).get<long>();
    if (v < 1) throw ValidationError(std::string("field '") + key + "' must be positive");
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

json to_json(const CoefficientMatrix& A) {
    return json{{"M", A.rows()}, {"N", A.cols()}, {"entries", complex_array(A.entries())}};
}

CoefficientMatrix matrix_from_json(const json& doc) {
    const long M = positive_int(doc, "M");
    const long N = positive_int(doc, "N");
    if (!doc.contains("entries")) throw ValidationError("missing field 'entries'");
    return CoefficientMatrix(M, N, complex_values(doc.at("entries"), "entries"));
}

json to_json(const GridFunction& f) {
    return json{{"Kx", f.kx()}, {"Ky", f.ky()}, {"samples", complex_array(f.samples())}};
}

GridFunction grid_from_json(const json& doc) {
    const long kx = positive_int(doc, "Kx");
    const long ky = positive_int(doc, "Ky");
    if (!doc.contains("samples")) throw ValidationError("missing field 'samples'");
    return GridFunction(kx, ky, complex_values(doc.at("samples"), "samples"));
}

json to_json(const MixedExponents& e) {
    return json{{"alpha", e.alpha()}, {"beta", e.beta()}, {"gamma", e.gamma()}, {"delta", e.delta()}};
}

json to_json(const ExtremizerReport& r) {
    json j{{"kind", r.kind}, {"M", r.M}, {"N", r.N}};
    if (r.eta) j["eta"] = *r.eta;
    j["exponents"] = r.exponents ? to_json(*r.exponents) : json(nullptr);
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["ratio"] = r.ratio;
    if (r.measured) j["measured"] = *r.measured;
    if (r.residual) j["residual"] = *r.residual;
    if (r.min_normalized) j["min_normalized"] = *r.min_normalized;
    if (r.warning) j["warning"] = *r.warning;
    return j;
}

json to_json(const BoundReport& r) {
    return json{{"M", r.M},
                {"N", r.N},
                {"exponents", to_json(r.exponents)},
                {"theta", r.theta},
                {"phi", r.phi ? json(*r.phi) : json(nullptr)},
                {"upper", r.upper},
                {"lower_extremizer", r.lower_extremizer},
                {"lower_kind", r.lower_kind},
                {"searched", r.searched},
                {"searched_start", r.searched_start},
                {"ratio_lower", r.ratio_lower},
                {"ratio_searched", r.ratio_searched},
                {"sandwich_ok", r.sandwich_ok},
                {"nonconvergence", r.nonconvergence}};
}

std::string csv_header() {
    return "M,N,alpha,beta,gamma,delta,theta,phi_or_blank,upper,lower,searched,ratio_lower,"
           "ratio_searched";
}

std::string csv_row(const BoundReport& r) {
    std::ostringstream os;
    const auto& e = r.exponents;
    os << r.M << ',' << r.N << ',' << fmt(e.alpha()) << ',' << fmt(e.beta()) << ','
       << fmt(e.gamma()) << ',' << fmt(e.delta()) << ',' << fmt(r.theta) << ','
       << (r.phi ? fmt(*r.phi) : std::string()) << ',' << fmt(r.upper) << ','
       << fmt(r.lower_extremizer) << ',' << fmt(r.searched) << ',' << fmt(r.ratio_lower) << ','
       << fmt(r.ratio_searched);
    return os.str();
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw ValidationError("malformed JSON in " + path.string() + ": " + err.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << doc.dump() << '\n';
}

}  // namespace mnl::io
