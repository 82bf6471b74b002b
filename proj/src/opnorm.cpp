#include "mnl/opnorm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "mnl/errors.hpp"

namespace mnl {

namespace {

constexpr double kFdStep = 1e-5;

void normalize(CoefficientMatrix& A) {
    const double f = A.frobenius();
    for (auto& v : A.entries()) v /= f;
}

CoefficientMatrix random_start(long M, long N, std::uint64_t seed, long restart, bool real_only) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CoefficientMatrix A(M, N);
    for (auto& v : A.entries()) {
        const double re = gauss(rng);
        const double im = real_only ? 0.0 : gauss(rng);
        v = {re, im};
    }
    if (A.is_zero()) A(0, 0) = 1.0;
    normalize(A);
    return A;
}

struct StartPoint {
    std::string label;
    CoefficientMatrix matrix;
};

std::vector<StartPoint> start_points(long M, long N, const SearchConfig& cfg) {
    std::vector<StartPoint> starts;
    const ExtremizerKind warm[] = {ChirpB{kDefaultEta}, ColumnC{}, RowR{}, OnesD{}, UnitE{}};
    for (const auto& kind : warm) {
        auto A = build(kind, M, N);
        if (cfg.real_only) {
            for (auto& v : A.entries()) v = v.real();
            if (A.is_zero()) A(0, 0) = 1.0;
        }
        normalize(A);
        starts.push_back({kind_name(kind), std::move(A)});
    }
    for (long r = 0; r < cfg.restarts; ++r) {
        starts.push_back({"random", random_start(M, N, cfg.seed, r, cfg.real_only)});
    }
    return starts;
}

/// Steepest ascent on the unit Frobenius sphere with step halving.
RestartTrace ascend(CoefficientMatrix A, const MixedExponents& e, const ObjectiveGrid& grid,
                    const SearchConfig& cfg) {
    RestartTrace trace;
    double best = objective(A, e, grid);
    trace.best_values.push_back(best);
    double step = cfg.step;
    const std::size_t count = A.entries().size();
    const std::size_t params = cfg.real_only ? count : 2 * count;
    std::vector<double> grad(params);

    for (long iter = 0; iter < cfg.max_iters && step >= cfg.tol; ++iter) {
        const double h = kFdStep * A.frobenius();
        for (std::size_t i = 0; i < params; ++i) {
            const std::size_t idx = i % count;
            const cdouble dir = i < count ? cdouble{1.0, 0.0} : cdouble{0.0, 1.0};
            CoefficientMatrix plus = A, minus = A;
            plus.entries()[idx] += h * dir;
            minus.entries()[idx] -= h * dir;
            grad[i] = (objective(plus, e, grid) - objective(minus, e, grid)) / (2.0 * h);
        }
        double gnorm = 0.0;
        for (double g : grad) gnorm += g * g;
        gnorm = std::sqrt(gnorm);
        if (!(gnorm > 0.0)) break;

        bool accepted = false;
        double gain = 0.0;
        while (step >= cfg.tol) {
            CoefficientMatrix trial = A;
            for (std::size_t i = 0; i < params; ++i) {
                const std::size_t idx = i % count;
                const cdouble dir = i < count ? cdouble{1.0, 0.0} : cdouble{0.0, 1.0};
                trial.entries()[idx] += step * grad[i] / gnorm * dir;
            }
            if (trial.is_zero()) {
                step *= 0.5;
                continue;
            }
            normalize(trial);
            const double value = objective(trial, e, grid);
            if (value > best) {
                gain = value - best;
                best = value;
                A = std::move(trial);
                accepted = true;
                step = std::min(2.0 * step, cfg.step);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        trace.best_values.push_back(best);
        if (gain <= cfg.tol * std::max(best, 1.0)) break;
    }
    trace.best = best;
    return trace;
}

bool sandwich_holds(const BoundReport& r, double grid_tol) {
    const double slack = 1.0 + 3.0 * grid_tol;
    return r.lower_extremizer <= r.searched * slack && r.searched <= r.upper * slack;
}

}  // namespace

void SearchConfig::validate() const {
    if (restarts < 1) throw ValidationError("restarts must be >= 1");
    if (max_iters < 0) throw ValidationError("max_iters must be >= 0");
    if (!(step > 0.0)) throw ValidationError("step must be positive");
    if (oversample < 2) throw ValidationError("oversample must be >= 2");
    if (!(tol > 0.0)) throw ValidationError("tol must be positive");
    if (!(grid_tol >= 0.0)) throw ValidationError("grid_tol must be non-negative");
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("MNL_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

double objective(const CoefficientMatrix& A, const MixedExponents& e, const ObjectiveGrid& grid) {
    if (A.is_zero()) throw ValidationError("objective is undefined for the zero matrix");
    EvalPlan plan;
    plan.kx = grid.kx;
    plan.ky = grid.ky;
    plan.path = A.rows() * A.cols() <= 256 ? EvalPath::Direct : EvalPath::ZeroPadTransform;
    const auto S = eval_sum(A, plan);
    return lrs_norm(S, e).value / lpq_norm(A, e);
}

std::pair<double, std::string> best_certified_lower(long M, long N, const MixedExponents& e) {
    // ||T E|| = ||E|| exactly, so 1 is always certified.
    std::pair<double, std::string> best{1.0, "unit"};
    const ExtremizerKind kinds[] = {ColumnC{}, RowR{}, OnesD{}};
    for (const auto& kind : kinds) {
        const double value = dirichlet_certified_lower(kind, M, N, e);
        if (value > best.first) best = {value, kind_name(kind)};
    }
    return best;
}

BoundReport estimate(long M, long N, const MixedExponents& e, const SearchConfig& cfg,
                     std::vector<RestartTrace>* traces) {
    cfg.validate();
    if (M < 1 || N < 1) throw ValidationError("M and N must be positive");
    const ObjectiveGrid grid{cfg.oversample * M, cfg.oversample * N};
    auto starts = start_points(M, N, cfg);
    std::vector<RestartTrace> results(starts.size());

    const unsigned workers = worker_count(cfg.threads, starts.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < starts.size(); i = next++) {
            results[i] = ascend(starts[i].matrix, e, grid, cfg);
            results[i].start = starts[i].label;
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    BoundReport rep;
    rep.M = M;
    rep.N = N;
    rep.exponents = e;
    rep.theta = theta(e);
    rep.phi = phi(e);
    rep.upper = upper_bound_magnitude(M, N, e);
    std::tie(rep.lower_extremizer, rep.lower_kind) = best_certified_lower(M, N, e);
    // Reduction in start order keeps the report independent of scheduling.
    for (const auto& r : results) {
        if (r.best > rep.searched) {
            rep.searched = r.best;
            rep.searched_start = r.start;
        }
    }
    rep.ratio_lower = rep.lower_extremizer / rep.upper;
    rep.ratio_searched = rep.searched / rep.upper;
    rep.sandwich_ok = sandwich_holds(rep, cfg.grid_tol);
    rep.nonconvergence = rep.searched < rep.lower_extremizer;
    if (traces) *traces = std::move(results);
    return rep;
}

SweepResult sharpness_sweep(const std::vector<long>& Ms, const std::vector<long>& Ns,
                            const std::vector<MixedExponents>& es, const SearchConfig& cfg) {
    if (Ms.size() != Ns.size() || Ms.empty()) {
        throw ValidationError("the M and N ladders must be non-empty and of equal length");
    }
    SweepResult out;
    for (const auto& e : es) {
        LadderDiagnostic ladder;
        ladder.exponents = e;
        ladder.phi = phi(e);
        for (std::size_t i = 0; i < Ms.size(); ++i) {
            auto rep = estimate(Ms[i], Ns[i], e, cfg);
            ladder.ratio_searched.push_back(rep.ratio_searched);
            out.reports.push_back(std::move(rep));
        }
        const auto& r = ladder.ratio_searched;
        if (r.size() >= 3) {
            const double a = r[r.size() - 3], b = r[r.size() - 2], c = r[r.size() - 1];
            const bool monotone = (a <= b && b <= c) || (a >= b && b >= c);
            const double lo = std::min({a, b, c}), hi = std::max({a, b, c});
            ladder.stabilized = !(monotone && lo > 0.0 && hi / lo - 1.0 > 0.2);
        }
        out.ladders.push_back(std::move(ladder));
    }
    return out;
}

}  // namespace mnl
