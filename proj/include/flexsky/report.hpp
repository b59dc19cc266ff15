#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "flexsky/datagen.hpp"
#include "flexsky/fdominance.hpp"
#include "flexsky/nra.hpp"

namespace flexsky {

/// Weight family for one run: a ratio-bounds spread around the centroid, or
/// an explicit polytope (constraint file).
WeightPolytope polytope_for(std::size_t dim, const Spread& spread);

/// Runs the engine over an in-memory vertical partition of the dataset and
/// returns the result ids.
std::set<std::string> engine_result_ids(const Dataset& ds, const WeightPolytope& polytope,
                                        std::size_t k, std::size_t mu,
                                        bool reference_kernel = false);

/// Full engine run over an in-memory partition (ids and metrics).
RunResult engine_run(const Dataset& ds, const WeightPolytope& polytope, std::size_t k,
                     std::size_t mu, bool reference_kernel = false);

// ---- parameter sweeps -----------------------------------------------------

struct SweepSpec {
    std::vector<GenSpec::Dist> dists{GenSpec::Dist::Uni};
    std::vector<std::size_t> ns{100000};
    std::vector<std::size_t> ds{2};
    std::vector<std::size_t> ks{10};
    std::vector<Spread> spreads{Spread::of(0.01)};
    std::vector<std::size_t> mus{100};
    std::vector<std::uint64_t> seeds{1};
};

struct ReportRow {
    std::string dist;
    std::size_t n = 0, d = 0, k = 0;
    std::string eps;
    std::size_t mu = 0;
    std::uint64_t seed = 0;
    std::uint64_t depth_grow_total = 0;
    std::uint64_t depth_shrink_total = 0;
    std::uint64_t sum_depths = 0;
    std::uint64_t fdom_tests = 0;
    std::size_t buffer_peak = 0;
    std::size_t output_size = 0;
    double elapsed_ms = 0.0;
};

/// One reproducible cell: generate (dist, n, d, seed), partition, run.
ReportRow run_cell(GenSpec::Dist dist, std::size_t n, std::size_t d, std::size_t k,
                   const Spread& spread, std::size_t mu, std::uint64_t seed);

/// Cartesian sweep over the spec; cells run in a worker pool (pool_threads,
/// 0 = available parallelism) and the report keeps grid order.
std::vector<ReportRow> run_sweep(const SweepSpec& spec, int pool_threads = 0,
                                 std::ostream* progress = nullptr);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

// ---- verification ---------------------------------------------------------

struct VerifyInstance {
    GenSpec gen;
    std::size_t k = 1;
    Spread spread;
    std::size_t mu = 1;
};

struct VerifyReport {
    std::size_t total = 0;
    std::size_t mismatches = 0;
    bool ok() const { return mismatches == 0; }
};

using EngineFn = std::function<std::set<std::string>(const Dataset&, const WeightPolytope&,
                                                     std::size_t, std::size_t)>;

/// Deterministic instance mix for randomized equivalence suites.
std::vector<VerifyInstance> random_suite(std::size_t instances, std::size_t max_n,
                                         std::uint64_t seed);

/// Runs engine vs nd_k_bruteforce on every instance; exact set equality.
/// The engine is injectable so the harness's sensitivity is itself testable.
VerifyReport verify_suite(const std::vector<VerifyInstance>& instances, const EngineFn& engine,
                          std::ostream* log = nullptr);
VerifyReport verify_suite(const std::vector<VerifyInstance>& instances,
                          std::ostream* log = nullptr);

}  // namespace flexsky
