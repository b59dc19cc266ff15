#include "flexsky/report.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "flexsky/csv.hpp"
#include "flexsky/oracles.hpp"
#include "flexsky/rng.hpp"

namespace flexsky {

WeightPolytope polytope_for(std::size_t dim, const Spread& spread) {
    return polytope_from_epsilon(dim, spread);
}

RunResult engine_run(const Dataset& ds, const WeightPolytope& polytope, std::size_t k,
                     std::size_t mu, bool reference_kernel) {
    auto lists = vertical_partition(ds);
    std::vector<SortedSource> sources;
    sources.reserve(lists.size());
    for (auto& list : lists) sources.push_back(SortedSource::from_list(std::move(list)));
    RunConfig config;
    config.k = k;
    config.mu = mu;
    config.polytope = polytope;
    config.attr_max = ds.attr_max();
    config.reference_kernel = reference_kernel;
    return run(sources, config);
}

std::set<std::string> engine_result_ids(const Dataset& ds, const WeightPolytope& polytope,
                                        std::size_t k, std::size_t mu, bool reference_kernel) {
    RunResult r = engine_run(ds, polytope, k, mu, reference_kernel);
    std::set<std::string> ids;
    for (const auto& t : r.result) ids.insert(t.id);
    return ids;
}

ReportRow run_cell(GenSpec::Dist dist, std::size_t n, std::size_t d, std::size_t k,
                   const Spread& spread, std::size_t mu, std::uint64_t seed) {
    GenSpec gen{dist, n, d, seed};
    Dataset ds = generate(gen);
    RunResult r = engine_run(ds, polytope_for(d, spread), k, mu);

    ReportRow row;
    row.dist = dist_name(dist);
    row.n = n;
    row.d = d;
    row.k = k;
    row.eps = spread.to_string();
    row.mu = mu;
    row.seed = seed;
    for (auto v : r.metrics.depth_growing) row.depth_grow_total += v;
    for (auto v : r.metrics.depth_shrinking) row.depth_shrink_total += v;
    row.sum_depths = r.metrics.sum_depths();
    row.fdom_tests = r.metrics.fdom_tests;
    row.buffer_peak = r.metrics.buffer_peak;
    row.output_size = r.metrics.output_size;
    row.elapsed_ms = r.metrics.elapsed_ms;
    return row;
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec, int pool_threads,
                                 std::ostream* progress) {
    struct Cell {
        GenSpec::Dist dist;
        std::size_t n, d, k;
        Spread spread;
        std::size_t mu;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (auto dist : spec.dists)
        for (auto n : spec.ns)
            for (auto d : spec.ds)
                for (auto k : spec.ks)
                    for (const auto& spread : spec.spreads)
                        for (auto mu : spec.mus)
                            for (auto seed : spec.seeds)
                                cells.push_back({dist, n, d, k, spread, mu, seed});
    if (cells.empty()) throw std::invalid_argument("empty sweep grid");

    std::vector<ReportRow> rows(cells.size());
#ifdef _OPENMP
    const int pool = pool_threads > 0 ? pool_threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(pool)
#else
    (void)pool_threads;
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(cells.size()); ++i) {
        const Cell& c = cells[i];
        rows[i] = run_cell(c.dist, c.n, c.d, c.k, c.spread, c.mu, c.seed);
        if (progress) {
            std::ostringstream line;
            line << "cell " << i + 1 << "/" << cells.size() << " " << rows[i].dist << " n="
                 << c.n << " d=" << c.d << " k=" << c.k << " eps=" << rows[i].eps
                 << " mu=" << c.mu << " seed=" << c.seed << " sum_depths="
                 << rows[i].sum_depths << " fdom=" << rows[i].fdom_tests << "\n";
#ifdef _OPENMP
#pragma omp critical(flexsky_sweep_progress)
#endif
            *progress << line.str();
        }
    }
    return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "dist,n,d,k,eps,mu,seed,depth_grow_total,depth_shrink_total,sum_depths,"
           "fdom_tests,buffer_peak,output_size,elapsed_ms\n";
    for (const auto& r : rows) {
        out << r.dist << ',' << r.n << ',' << r.d << ',' << r.k << ',' << r.eps << ',' << r.mu
            << ',' << r.seed << ',' << r.depth_grow_total << ',' << r.depth_shrink_total << ','
            << r.sum_depths << ',' << r.fdom_tests << ',' << r.buffer_peak << ','
            << r.output_size << ',' << csv::format_double(r.elapsed_ms) << '\n';
    }
}

std::vector<VerifyInstance> random_suite(std::size_t instances, std::size_t max_n,
                                         std::uint64_t seed) {
    if (max_n < 2) throw std::invalid_argument("random suite needs max_n >= 2");
    static const std::size_t kDims[] = {2, 3, 4};
    static const std::size_t kKs[] = {1, 2, 5};
    static const std::size_t kMus[] = {1, 10};
    const Spread kSpreads[] = {Spread::none(), Spread::of(0.05), Spread::of(0.2),
                               Spread::full()};
    std::vector<VerifyInstance> out;
    out.reserve(instances);
    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng(mix_seed(seed, i));
        VerifyInstance inst;
        inst.gen.dist = i % 2 == 0 ? GenSpec::Dist::Uni : GenSpec::Dist::Ant;
        inst.gen.n = 2 + rng.below(max_n - 1);
        inst.gen.d = kDims[rng.below(3)];
        inst.gen.seed = rng.next();
        inst.k = kKs[rng.below(3)];
        inst.spread = kSpreads[rng.below(4)];
        inst.mu = kMus[rng.below(2)];
        out.push_back(std::move(inst));
    }
    return out;
}

VerifyReport verify_suite(const std::vector<VerifyInstance>& instances, const EngineFn& engine,
                          std::ostream* log) {
    VerifyReport report;
    report.total = instances.size();
    std::size_t mismatches = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : mismatches)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(instances.size()); ++i) {
        const VerifyInstance& inst = instances[i];
        Dataset ds = generate(inst.gen);
        WeightPolytope polytope = polytope_for(inst.gen.d, inst.spread);
        std::set<std::string> expected = nd_k_bruteforce(ds, polytope, inst.k);
        std::set<std::string> actual = engine(ds, polytope, inst.k, inst.mu);
        const bool ok = expected == actual;
        if (!ok) ++mismatches;
        if (log) {
            std::ostringstream line;
            line << (ok ? "ok " : "MISMATCH ") << "instance " << i << " "
                 << dist_name(inst.gen.dist) << " n=" << inst.gen.n << " d=" << inst.gen.d
                 << " k=" << inst.k << " eps=" << inst.spread.to_string()
                 << " mu=" << inst.mu << " seed=" << inst.gen.seed;
            if (!ok)
                line << " expected " << expected.size() << " ids, engine returned "
                     << actual.size();
            line << "\n";
#ifdef _OPENMP
#pragma omp critical(flexsky_verify_log)
#endif
            *log << line.str();
        }
    }
    report.mismatches = mismatches;
    return report;
}

VerifyReport verify_suite(const std::vector<VerifyInstance>& instances, std::ostream* log) {
    return verify_suite(
        instances,
        [](const Dataset& ds, const WeightPolytope& polytope, std::size_t k, std::size_t mu) {
            return engine_result_ids(ds, polytope, k, mu);
        },
        log);
}

}  // namespace flexsky
