#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mnl/extremizers.hpp"
#include "mnl/norms.hpp"
#include "mnl/trigsum.hpp"

namespace mnl {

struct ObjectiveGrid {
    long kx = 0;
    long ky = 0;
};

/// ||T A||_{L^{r,s}} / ||A||_{l^{p,q}} on the given grid. Throws
/// ValidationError for the zero matrix.
double objective(const CoefficientMatrix& A, const MixedExponents& e, const ObjectiveGrid& grid);

struct SearchConfig {
    long restarts = 8;
    long max_iters = 200;
    double step = 0.5;
    std::uint64_t seed = 0;
    /// Objective grid is oversample*M by oversample*N.
    long oversample = 8;
    double tol = 1e-10;
    /// Relative slack used by the sandwich check (applied three times over).
    double grid_tol = 1e-3;
    bool real_only = false;
    /// 0 means: MNL_THREADS if set, else hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

struct RestartTrace {
    std::string start;               // "random" or an extremizer name
    std::vector<double> best_values;  // best objective after each accepted step
    double best = 0.0;
};

struct BoundReport {
    long M = 0;
    long N = 0;
    MixedExponents exponents = MixedExponents::from_reciprocals(0.5, 0.5, 0.5, 0.5);
    double theta = 0.0;
    std::optional<double> phi;
    double upper = 0.0;
    double lower_extremizer = 0.0;
    std::string lower_kind;
    double searched = 0.0;
    std::string searched_start;
    double ratio_lower = 0.0;
    double ratio_searched = 0.0;
    bool sandwich_ok = true;
    /// searched < lower_extremizer: the ascent did not reach a known value.
    bool nonconvergence = false;
};

/// Best certified lower bound among the unit, column, row and ones extremizers.
std::pair<double, std::string> best_certified_lower(long M, long N, const MixedExponents& e);

/// Multi-start ascent for sup ||T A|| / ||A||. With traces non-null, one trace
/// per start is recorded in start order.
BoundReport estimate(long M, long N, const MixedExponents& e, const SearchConfig& cfg,
                     std::vector<RestartTrace>* traces = nullptr);

struct LadderDiagnostic {
    MixedExponents exponents = MixedExponents::from_reciprocals(0.5, 0.5, 0.5, 0.5);
    std::optional<double> phi;
    std::vector<double> ratio_searched;  // one per rung
    /// False only when the top three rungs drift monotonically by more than 20%.
    bool stabilized = true;
};

struct SweepResult {
    std::vector<BoundReport> reports;
    std::vector<LadderDiagnostic> ladders;
};

/// Runs estimate on the rungs (Ms[i], Ns[i]) for every exponent tuple.
SweepResult sharpness_sweep(const std::vector<long>& Ms, const std::vector<long>& Ns,
                            const std::vector<MixedExponents>& es, const SearchConfig& cfg);

/// Worker count from MNL_THREADS (if set and positive) capped by request.
unsigned worker_count(unsigned requested, std::size_t jobs);

}  // namespace mnl
