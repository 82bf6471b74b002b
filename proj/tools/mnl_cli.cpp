// mnl: command-line driver for the mixed-norm laboratory.
//
// Exit status: 0 success, 1 validation error, 2 invariant violation.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mnl/errors.hpp"
#include "mnl/exponents.hpp"
#include "mnl/extremizers.hpp"
#include "mnl/io.hpp"
#include "mnl/norms.hpp"
#include "mnl/opnorm.hpp"
#include "mnl/trigsum.hpp"

namespace {

using mnl::io::json;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kInvariant = 2;

/// Raised by a command whose output reveals a broken invariant; the records
/// have already been written.
struct InvariantFlag {
    std::string message;
};

struct ExponentFlags {
    std::string p = "2", q = "2", r = "2", s = "2";
    std::optional<double> alpha, beta, gamma, delta;

    void attach(CLI::App* app) {
        app->add_option("--p", p, "Inner matrix exponent (1..inf)")->capture_default_str();
        app->add_option("--q", q, "Outer matrix exponent (1..inf)")->capture_default_str();
        app->add_option("--r", r, "Inner function exponent, along x (1..inf)")->capture_default_str();
        app->add_option("--s", s, "Outer function exponent, along y (1..inf)")->capture_default_str();
        app->add_option("--alpha", alpha, "Reciprocal 1/p in [0,1]");
        app->add_option("--beta", beta, "Reciprocal 1/q in [0,1]");
        app->add_option("--gamma", gamma, "Reciprocal 1/r in [0,1]");
        app->add_option("--delta", delta, "Reciprocal 1/s in [0,1]");
    }

    mnl::MixedExponents get() const {
        auto pick = [](const std::optional<double>& recip, const std::string& exponent) {
            return recip ? *recip : mnl::reciprocal_of(mnl::parse_exponent(exponent));
        };
        return mnl::MixedExponents::from_reciprocals(pick(alpha, p), pick(beta, q), pick(gamma, r),
                                                     pick(delta, s));
    }
};

/// Output sink: a file when --out is given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw mnl::ValidationError("cannot write " + path);
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }
    void line(const json& j) { out() << j.dump() << '\n'; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

long parse_long(const std::string& text) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw mnl::ValidationError("cannot parse integer '" + text + "'");
    }
    if (used != text.size()) throw mnl::ValidationError("cannot parse integer '" + text + "'");
    return v;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw mnl::ValidationError("cannot parse number '" + text + "'");
    }
    if (used != text.size()) throw mnl::ValidationError("cannot parse number '" + text + "'");
    return v;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_long(part));
    if (out.empty()) throw mnl::ValidationError("empty integer list");
    return out;
}

/// "a:b" expands to the powers of two from a to b; "a,b,c" is taken literally.
std::vector<long> parse_ladder(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return parse_long_list(text);
    const long lo = parse_long(text.substr(0, colon));
    const long hi = parse_long(text.substr(colon + 1));
    if (lo < 1 || hi < lo) throw mnl::ValidationError("ladder must satisfy 1 <= lo <= hi");
    std::vector<long> out;
    for (long m = lo; m <= hi; m *= 2) out.push_back(m);
    return out;
}

/// "p,q,r,s" with inf allowed.
mnl::MixedExponents parse_tuple(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw mnl::ValidationError("exponent tuple needs four values: " + text);
    return mnl::MixedExponents::from_exponents(
        mnl::parse_exponent(parts[0]), mnl::parse_exponent(parts[1]),
        mnl::parse_exponent(parts[2]), mnl::parse_exponent(parts[3]));
}

mnl::MixedExponents parse_reciprocal_tuple(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw mnl::ValidationError("reciprocal tuple needs four values: " + text);
    return mnl::MixedExponents::from_reciprocals(parse_double(parts[0]), parse_double(parts[1]),
                                                 parse_double(parts[2]), parse_double(parts[3]));
}

struct QuadFlags {
    long oversample = 8;
    bool refine_check = false;
    double rel_tol = 1e-3;

    void attach(CLI::App* app) {
        app->add_option("--oversample", oversample, "Grid oversampling factor")->capture_default_str();
        app->add_flag("--refine-check", refine_check, "Compare against the half-coarse grid");
        app->add_option("--rel-tol", rel_tol, "Refinement check tolerance")->capture_default_str();
    }
    mnl::QuadratureSpec get() const {
        mnl::QuadratureSpec spec{oversample, refine_check, rel_tol};
        spec.validate();
        return spec;
    }
};

struct SearchFlags {
    mnl::SearchConfig cfg;

    void attach(CLI::App* app) {
        app->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str();
        app->add_option("--max-iters", cfg.max_iters, "Iterations per restart")->capture_default_str();
        app->add_option("--step", cfg.step, "Initial ascent step")->capture_default_str();
        app->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        app->add_option("--oversample", cfg.oversample, "Objective grid oversampling")->capture_default_str();
        app->add_option("--tol", cfg.tol, "Stagnation tolerance")->capture_default_str();
        app->add_option("--grid-tol", cfg.grid_tol, "Sandwich slack per unit")->capture_default_str();
        app->add_flag("--real-only", cfg.real_only, "Search real matrices only");
        app->add_option("--threads", cfg.threads, "Worker threads (0: MNL_THREADS or all cores)");
    }
};

// --- commands ---------------------------------------------------------------

struct NormCmd {
    std::string matrix, grid, out;
    ExponentFlags exps;
    QuadFlags quad;

    int run() {
        if (matrix.empty() && grid.empty()) {
            throw mnl::ValidationError("norm needs --matrix and/or --grid");
        }
        const auto e = exps.get();
        json rec{{"exponents", mnl::io::to_json(e)}};
        if (!matrix.empty()) {
            rec["lpq"] = mnl::lpq_norm(mnl::io::matrix_from_json(mnl::io::read_json_file(matrix)), e);
        }
        if (!grid.empty()) {
            const auto res = mnl::lrs_norm(mnl::io::grid_from_json(mnl::io::read_json_file(grid)), e,
                                           quad.get());
            rec["lrs"] = res.value;
            if (res.coarse_value) rec["lrs_coarse"] = *res.coarse_value;
            if (res.warning) {
                rec["warning"] = *res.warning;
                std::cerr << "warning: " << *res.warning << '\n';
            }
        }
        Sink(out).line(rec);
        return kOk;
    }
};

struct EvalCmd {
    std::string matrix, out, path = "transform", scale = "twopi";
    long kx = 0, ky = 0;
    long oversample = 8;

    int run() {
        const auto A = mnl::io::matrix_from_json(mnl::io::read_json_file(matrix));
        mnl::EvalPlan plan;
        plan.kx = kx > 0 ? kx : oversample * A.rows();
        plan.ky = ky > 0 ? ky : oversample * A.cols();
        if (scale == "twopi") {
            plan.scale = mnl::FrequencyScale::TwoPi;
        } else if (scale == "one") {
            plan.scale = mnl::FrequencyScale::One;
        } else {
            throw mnl::ValidationError("--scale must be twopi or one");
        }
        if (path == "direct") {
            plan.path = mnl::EvalPath::Direct;
        } else if (path == "transform") {
            plan.path = mnl::EvalPath::ZeroPadTransform;
        } else {
            throw mnl::ValidationError("--path must be direct or transform");
        }
        if (plan.scale == mnl::FrequencyScale::One) plan.path = mnl::EvalPath::Direct;
        const auto f = plan.scale == mnl::FrequencyScale::TwoPi ? mnl::eval_sum(A, plan)
                                                                 : mnl::eval_nonortho(A, plan);
        Sink(out).line(mnl::io::to_json(f));
        return kOk;
    }
};

struct BoundCmd {
    long M = 1, N = 1;
    std::string out;
    ExponentFlags exps;

    int run() {
        const auto e = exps.get();
        const auto label = mnl::classify(e);
        json branches = json::array();
        for (auto b : label.all_matching) branches.push_back(mnl::to_string(b));
        const auto f = mnl::phi(e);
        Sink(out).line(json{{"M", M},
                            {"N", N},
                            {"exponents", mnl::io::to_json(e)},
                            {"theta", mnl::theta(e)},
                            {"phi", f ? json(*f) : json(nullptr)},
                            {"upper", mnl::upper_bound_magnitude(M, N, e)},
                            {"branch", mnl::to_string(label.branch)},
                            {"all_matching", branches}});
        return kOk;
    }
};

struct ExtremalCmd {
    std::string kind = "chirp", out, matrix_out;
    long M = 4, N = 4;
    long index = 0, m = 0, n = 0;
    double eta = mnl::kDefaultEta;
    double value_re = 1.0, value_im = 0.0;
    long points = 65;
    ExponentFlags exps;
    QuadFlags quad;

    int run() {
        const auto e = exps.get();
        const mnl::cdouble value(value_re, value_im);
        mnl::ExtremizerKind k;
        if (kind == "chirp") {
            k = mnl::ChirpB{eta};
        } else if (kind == "column") {
            k = mnl::ColumnC{index, value};
        } else if (kind == "row") {
            k = mnl::RowR{index, value};
        } else if (kind == "ones") {
            k = mnl::OnesD{value};
        } else if (kind == "unit") {
            k = mnl::UnitE{m, n, value};
        } else {
            throw mnl::ValidationError("--kind must be chirp, column, row, ones or unit");
        }
        const auto A = mnl::build(k, M, N);
        if (!matrix_out.empty()) mnl::io::write_json_file(matrix_out, mnl::io::to_json(A));

        mnl::ExtremizerReport rep;
        if (kind == "chirp") {
            rep = mnl::verify_chirp_lower(M, N, eta, points, e);
        } else if (kind == "unit") {
            rep = mnl::unit_sharpness(std::get<mnl::UnitE>(k), M, N, e, quad.get());
        } else {
            rep = mnl::verify_dirichlet_lower(k, M, N, e, quad.get());
        }
        Sink(out).line(mnl::io::to_json(rep));
        return kOk;
    }
};

struct ChirpCheckCmd {
    double eta = mnl::kDefaultEta;
    std::string ladder = "1024:65536";
    std::string xs;
    std::string out;

    int run() {
        std::vector<double> x_values;
        if (xs.empty()) {
            for (int i = 0; i <= 6; ++i) x_values.push_back(eta + (1.0 - 2.0 * eta) * i / 6.0);
        } else {
            for (const auto& part : split(xs, ',')) x_values.push_back(parse_double(part));
        }
        const auto sweep = mnl::chirp_residual_sweep(eta, x_values, parse_ladder(ladder));
        Sink sink(out);
        for (const auto& row : sweep.rows) {
            sink.line(json{{"M", row.M},
                           {"x", row.x},
                           {"modulus", row.modulus},
                           {"normalized_modulus", row.normalized_modulus},
                           {"residual", row.residual}});
        }
        const double lo = sweep.predicted_normalized * 0.75, hi = sweep.predicted_normalized * 1.25;
        const bool slope_ok = sweep.slope <= 0.1;
        const bool modulus_ok = sweep.normalized_min >= lo && sweep.normalized_max <= hi;
        json max_res = json::array();
        for (const auto& [M, r] : sweep.max_residual) max_res.push_back({M, r});
        sink.line(json{{"summary", "chirp-check"},
                       {"eta", eta},
                       {"max_residual", max_res},
                       {"slope", sweep.slope},
                       {"normalized_min", sweep.normalized_min},
                       {"normalized_max", sweep.normalized_max},
                       {"predicted_normalized", sweep.predicted_normalized},
                       {"slope_ok", slope_ok},
                       {"modulus_ok", modulus_ok}});
        if (!slope_ok || !modulus_ok) {
            throw InvariantFlag{"chirp residual grows with M or the modulus misses sqrt(2/eta)"};
        }
        return kOk;
    }
};

struct OpnormCmd {
    long M = 4, N = 4;
    std::string out;
    ExponentFlags exps;
    SearchFlags search;

    int run() {
        const auto rep = mnl::estimate(M, N, exps.get(), search.cfg);
        Sink(out).line(mnl::io::to_json(rep));
        if (!rep.sandwich_ok) throw InvariantFlag{"sandwich lower <= searched <= upper violated"};
        return kOk;
    }
};

struct SweepCmd {
    std::string m_list = "2,4,8", n_list = "2,4,8";
    std::vector<std::string> tuples, reciprocal_tuples;
    std::string out, csv;
    SearchFlags search;

    int run() {
        std::vector<mnl::MixedExponents> es;
        for (const auto& t : tuples) es.push_back(parse_tuple(t));
        for (const auto& t : reciprocal_tuples) es.push_back(parse_reciprocal_tuple(t));
        if (es.empty()) throw mnl::ValidationError("sweep needs at least one --exponents tuple");
        const auto res =
            mnl::sharpness_sweep(parse_long_list(m_list), parse_long_list(n_list), es, search.cfg);
        Sink sink(out);
        bool ok = true;
        for (const auto& r : res.reports) {
            sink.line(mnl::io::to_json(r));
            ok = ok && r.sandwich_ok;
        }
        for (const auto& l : res.ladders) {
            sink.line(json{{"ladder", mnl::io::to_json(l.exponents)},
                           {"phi", l.phi ? json(*l.phi) : json(nullptr)},
                           {"ratio_searched", l.ratio_searched},
                           {"stabilized", l.stabilized}});
        }
        if (!csv.empty()) {
            std::ofstream f(csv);
            if (!f) throw mnl::ValidationError("cannot write " + csv);
            f << mnl::io::csv_header() << '\n';
            for (const auto& r : res.reports) f << mnl::io::csv_row(r) << '\n';
        }
        if (!ok) throw InvariantFlag{"sandwich lower <= searched <= upper violated"};
        return kOk;
    }
};

struct NonorthoCmd {
    std::string sizes = "2,4,8,16,32", out;
    long samples = 50;
    long oversample = 16;
    std::uint64_t seed = 0;

    int run() {
        const auto sweep = mnl::nonortho_ratio_sweep(parse_long_list(sizes), samples, seed, oversample);
        Sink sink(out);
        for (const auto& row : sweep.rows) {
            sink.line(json{{"size", row.size}, {"max_ratio", row.max_ratio}, {"mean_ratio", row.mean_ratio}});
        }
        sink.line(json{{"summary", "nonortho-check"},
                       {"empirical_constant", sweep.empirical_constant},
                       {"bounded", sweep.bounded}});
        if (!sweep.bounded) throw InvariantFlag{"ratio grows by more than 10% at the largest size"};
        return kOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-norm laboratory for truncated double trigonometric sums"};
    app.require_subcommand(1);

    NormCmd norm;
    auto* c_norm = app.add_subcommand("norm", "l^{p,q} norm of a matrix file and/or L^{r,s} norm of a grid file");
    c_norm->add_option("--matrix", norm.matrix, "Matrix JSON file");
    c_norm->add_option("--grid", norm.grid, "Grid JSON file");
    c_norm->add_option("--out", norm.out, "Output file (default stdout)");
    norm.exps.attach(c_norm);
    norm.quad.attach(c_norm);

    EvalCmd ev;
    auto* c_eval = app.add_subcommand("eval", "Sample S (or V with --scale one) on a grid");
    c_eval->add_option("--matrix", ev.matrix, "Matrix JSON file")->required();
    c_eval->add_option("--Kx", ev.kx, "x grid size (default oversample*M)");
    c_eval->add_option("--Ky", ev.ky, "y grid size (default oversample*N)");
    c_eval->add_option("--oversample", ev.oversample, "Default grid factor")->capture_default_str();
    c_eval->add_option("--path", ev.path, "direct | transform")->capture_default_str();
    c_eval->add_option("--scale", ev.scale, "twopi | one")->capture_default_str();
    c_eval->add_option("--out", ev.out, "Output grid file (default stdout)");

    BoundCmd bound;
    auto* c_bound = app.add_subcommand("bound", "Theta, Phi and the upper-bound magnitude");
    c_bound->add_option("--M", bound.M, "Rows")->required();
    c_bound->add_option("--N", bound.N, "Columns")->required();
    c_bound->add_option("--out", bound.out, "Output file (default stdout)");
    bound.exps.attach(c_bound);

    ExtremalCmd ext;
    auto* c_ext = app.add_subcommand("extremal", "Build an extremizer and verify its lower bound");
    c_ext->add_option("--kind", ext.kind, "chirp | column | row | ones | unit")->capture_default_str();
    c_ext->add_option("--M", ext.M, "Rows")->capture_default_str();
    c_ext->add_option("--N", ext.N, "Columns")->capture_default_str();
    c_ext->add_option("--eta", ext.eta, "Chirp parameter in (0,1)")->capture_default_str();
    c_ext->add_option("--index", ext.index, "0-based column (column) or row (row) index")->capture_default_str();
    c_ext->add_option("--m", ext.m, "0-based row of the unit entry")->capture_default_str();
    c_ext->add_option("--n", ext.n, "0-based column of the unit entry")->capture_default_str();
    c_ext->add_option("--value-re", ext.value_re, "Real part of the nonzero value")->capture_default_str();
    c_ext->add_option("--value-im", ext.value_im, "Imaginary part of the nonzero value")->capture_default_str();
    c_ext->add_option("--points", ext.points, "Chirp grid points per axis")->capture_default_str();
    c_ext->add_option("--matrix-out", ext.matrix_out, "Also write the matrix JSON here");
    c_ext->add_option("--out", ext.out, "Output file (default stdout)");
    ext.exps.attach(c_ext);
    ext.quad.attach(c_ext);

    ChirpCheckCmd chirp;
    auto* c_chirp = app.add_subcommand("chirp-check", "Residual sweep of the chirp-sum closed form");
    c_chirp->add_option("--eta", chirp.eta, "Chirp parameter in (0,1)")->capture_default_str();
    c_chirp->add_option("--M-ladder", chirp.ladder, "lo:hi (powers of two) or a comma list")->capture_default_str();
    c_chirp->add_option("--x-list", chirp.xs, "Comma list of x in [eta,1-eta] (default 7 equispaced)");
    c_chirp->add_option("--out", chirp.out, "Output file (default stdout)");

    OpnormCmd op;
    auto* c_op = app.add_subcommand("opnorm", "Search for the operator norm at one point");
    c_op->add_option("--M", op.M, "Rows")->capture_default_str();
    c_op->add_option("--N", op.N, "Columns")->capture_default_str();
    c_op->add_option("--out", op.out, "Output file (default stdout)");
    op.exps.attach(c_op);
    op.search.attach(c_op);

    SweepCmd sweep;
    auto* c_sweep = app.add_subcommand("sweep", "Operator-norm search over an (M,N) ladder");
    c_sweep->add_option("--M-list", sweep.m_list, "Comma list of M")->capture_default_str();
    c_sweep->add_option("--N-list", sweep.n_list, "Comma list of N, paired with --M-list")->capture_default_str();
    c_sweep->add_option("--exponents", sweep.tuples, "p,q,r,s tuple (repeatable; inf allowed)");
    c_sweep->add_option("--reciprocals", sweep.reciprocal_tuples, "alpha,beta,gamma,delta tuple (repeatable)");
    c_sweep->add_option("--out", sweep.out, "JSONL output (default stdout)");
    c_sweep->add_option("--csv", sweep.csv, "Aggregate CSV output");
    sweep.search.attach(c_sweep);

    NonorthoCmd non;
    auto* c_non = app.add_subcommand("nonortho-check", "Ratio sweep for the non-orthogonal sum V");
    c_non->add_option("--sizes", non.sizes, "Comma list of M = N")->capture_default_str();
    c_non->add_option("--samples", non.samples, "Random matrices per size")->capture_default_str();
    c_non->add_option("--oversample", non.oversample, "Grid factor")->capture_default_str();
    c_non->add_option("--seed", non.seed, "RNG seed")->capture_default_str();
    c_non->add_option("--out", non.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    try {
        if (c_norm->parsed()) return norm.run();
        if (c_eval->parsed()) return ev.run();
        if (c_bound->parsed()) return bound.run();
        if (c_ext->parsed()) return ext.run();
        if (c_chirp->parsed()) return chirp.run();
        if (c_op->parsed()) return op.run();
        if (c_sweep->parsed()) return sweep.run();
        if (c_non->parsed()) return non.run();
    } catch (const InvariantFlag& f) {
        std::cerr << json{{"error", "invariant_violation"}, {"message", f.message}}.dump() << '\n';
        return kInvariant;
    } catch (const mnl::InvariantViolation& e) {
        std::cerr << json{{"error", "invariant_violation"}, {"message", e.what()}}.dump() << '\n';
        return kInvariant;
    } catch (const mnl::ValidationError& e) {
        std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << '\n';
        return kValidation;
    }
    return kValidation;
}
