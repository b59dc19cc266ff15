#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "flexsky/datagen.hpp"
#include "flexsky/nra.hpp"
#include "flexsky/oracles.hpp"
#include "flexsky/report.hpp"

namespace {

using namespace flexsky;

nlohmann::json run_report_json(const RunResult& r) {
    nlohmann::json result = nlohmann::json::array();
    for (const auto& t : r.result) result.push_back({{"id", t.id}, {"values", t.values}});
    return {{"result", std::move(result)},
            {"depth",
             {{"growing", r.metrics.depth_growing}, {"shrinking", r.metrics.depth_shrinking}}},
            {"fdom_tests", r.metrics.fdom_tests},
            {"buffer_peak", r.metrics.buffer_peak},
            {"output_size", r.metrics.output_size},
            {"elapsed_ms", r.metrics.elapsed_ms}};
}

void emit(const nlohmann::json& doc, const std::string& out_file) {
    if (out_file.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write " + out_file);
    out << doc.dump(2) << "\n";
}

WeightPolytope polytope_from_flags(std::size_t dim, const std::string& eps,
                                   const std::string& constraints_file) {
    if (!constraints_file.empty()) {
        WeightPolytope p = load_polytope(constraints_file);
        if (p.dim != dim)
            throw std::runtime_error("constraint polytope dimensionality (" +
                                     std::to_string(p.dim) + ") does not match the data (" +
                                     std::to_string(dim) + ")");
        return p;
    }
    return polytope_from_epsilon(dim, Spread::parse(eps));
}

std::vector<Spread> parse_spreads(const std::vector<std::string>& texts) {
    std::vector<Spread> out;
    for (const auto& t : texts) out.push_back(Spread::parse(t));
    return out;
}

int cmd_generate(const std::string& dist, std::size_t n, std::size_t d, std::uint64_t seed,
                 const std::string& out_dir) {
    GenSpec spec{parse_dist(dist), n, d, seed};
    Dataset ds = generate(spec);
    PartitionMeta meta{dist_name(spec.dist), ds.size(), ds.dim(), seed, ds.attr_max()};
    export_partition(ds, out_dir, meta);
    save_dataset_csv(ds, std::filesystem::path(out_dir) / "dataset.csv");
    std::cout << "wrote " << out_dir << ": dataset.csv, " << d << " ranked lists, meta.json\n";
    return 0;
}

int cmd_run(const std::string& lists_dir, std::size_t k, std::size_t mu, const std::string& eps,
            const std::string& constraints_file, const std::string& out_file, bool reference) {
    auto [sources, meta] = open_partition(lists_dir);
    RunConfig config;
    config.k = k;
    config.mu = mu;
    config.polytope = polytope_from_flags(meta.d, eps, constraints_file);
    config.attr_max = meta.attr_max;
    config.reference_kernel = reference;
    RunResult r = run(sources, config);
    emit(run_report_json(r), out_file);
    return 0;
}

int cmd_oracle(const std::string& dataset_file, const std::string& op, std::size_t k,
               const std::string& eps, const std::string& constraints_file,
               std::vector<double> weights, const std::string& out_file) {
    Dataset ds = load_dataset_csv(dataset_file);
    std::set<std::string> ids;
    if (op == "skyline") {
        ids = skyline(ds);
    } else if (op == "skyband") {
        ids = skyband(ds, k);
    } else if (op == "topk") {
        if (weights.empty()) weights.assign(ds.dim(), 1.0 / static_cast<double>(ds.dim()));
        ids = top_k(ds, weights, k);
    } else if (op == "ndk") {
        ids = nd_k_bruteforce(ds, polytope_from_flags(ds.dim(), eps, constraints_file), k);
    } else {
        throw std::runtime_error("unknown oracle op '" + op +
                                 "' (expected skyline|skyband|topk|ndk)");
    }
    emit({{"op", op}, {"k", k}, {"size", ids.size()}, {"ids", ids}}, out_file);
    return 0;
}

int cmd_verify_single(const std::string& dataset_file, std::size_t k, std::size_t mu,
                      const std::string& eps, const std::string& constraints_file) {
    Dataset ds = load_dataset_csv(dataset_file);
    WeightPolytope polytope = polytope_from_flags(ds.dim(), eps, constraints_file);
    std::set<std::string> expected = nd_k_bruteforce(ds, polytope, k);
    std::set<std::string> actual = engine_result_ids(ds, polytope, k, mu);
    if (expected == actual) {
        std::cout << "ok: engine matches nd_k_bruteforce (" << expected.size() << " ids)\n";
        return 0;
    }
    std::cout << "MISMATCH: oracle " << expected.size() << " ids, engine " << actual.size()
              << " ids\n";
    return 1;
}

int cmd_verify_suite(std::size_t instances, std::size_t max_n, std::uint64_t seed) {
    auto suite = random_suite(instances, max_n, seed);
    VerifyReport report = verify_suite(suite, &std::cout);
    std::cout << report.total - report.mismatches << "/" << report.total << " instances match\n";
    return report.ok() ? 0 : 1;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_file, int threads) {
    std::vector<ReportRow> rows = run_sweep(spec, threads, &std::cerr);
    if (out_file.empty()) {
        write_report_csv(std::cout, rows);
    } else {
        std::ofstream out(out_file);
        if (!out) throw std::runtime_error("cannot write " + out_file);
        write_report_csv(out, rows);
        // Aggregate summary (mean over repetitions) on stdout.
        std::map<std::string, std::pair<std::size_t, ReportRow>> cells;
        for (const auto& r : rows) {
            std::string key = r.dist + "|" + std::to_string(r.n) + "|" + std::to_string(r.d) +
                              "|" + std::to_string(r.k) + "|" + r.eps + "|" +
                              std::to_string(r.mu);
            auto& [count, acc] = cells.try_emplace(key, 0, r).first->second;
            if (count > 0) {
                acc.sum_depths += r.sum_depths;
                acc.fdom_tests += r.fdom_tests;
                acc.output_size += r.output_size;
                acc.elapsed_ms += r.elapsed_ms;
            }
            ++count;
        }
        for (auto& [key, entry] : cells) {
            auto& [count, acc] = entry;
            std::cout << acc.dist << " n=" << acc.n << " d=" << acc.d << " k=" << acc.k
                      << " eps=" << acc.eps << " mu=" << acc.mu << " reps=" << count
                      << " mean_sum_depths=" << acc.sum_depths / count
                      << " mean_fdom_tests=" << acc.fdom_tests / count
                      << " mean_output=" << acc.output_size / count << " mean_ms="
                      << acc.elapsed_ms / static_cast<double>(count) << "\n";
        }
        std::cout << "wrote " << rows.size() << " rows to " << out_file << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("FLEXSKY_THREADS")) {
        const int t = std::atoi(env);
#ifdef _OPENMP
        if (t > 0) omp_set_num_threads(t);
#else
        (void)t;
#endif
    }

    CLI::App app{"flexible skylines (ND_k) over vertically distributed ranked lists, "
                 "sorted access only"};
    app.require_subcommand(1);

    // generate
    std::string dist = "uni", out_dir;
    std::size_t n = 100000, d = 2;
    std::uint64_t seed = 1;
    auto* generate = app.add_subcommand("generate", "generate a synthetic dataset + partition");
    generate->add_option("--dist", dist, "uni | ant")->capture_default_str();
    generate->add_option("--n", n, "dataset size")->capture_default_str();
    generate->add_option("--d", d, "dimensions")->capture_default_str();
    generate->add_option("--seed", seed, "generator seed")->capture_default_str();
    generate->add_option("--out", out_dir, "output directory (must be empty)")->required();

    // shared run/oracle/verify flags
    std::string lists_dir, dataset_file, eps = "0.01", constraints_file, out_file, op = "ndk";
    std::size_t k = 10, mu = 100;
    bool reference = false;
    std::vector<double> weights;

    auto* run_cmd = app.add_subcommand("run", "run the NRA engine over a partition directory");
    run_cmd->add_option("--lists", lists_dir, "partition directory (list_i.csv + meta.json)")
        ->required();
    run_cmd->add_option("--k", k, "dominance threshold k")->capture_default_str();
    run_cmd->add_option("--mu", mu, "sorted-access batch size")->capture_default_str();
    run_cmd->add_option("--eps", eps, "weight spread: none | full | decimal in (0,1]")
        ->capture_default_str();
    run_cmd->add_option("--constraints", constraints_file,
                        "JSON weight-constraint file (overrides --eps)");
    run_cmd->add_option("--out", out_file, "write the JSON report here (default stdout)");
    run_cmd->add_flag("--reference", reference, "use the serial reference dominance kernels");

    auto* oracle = app.add_subcommand("oracle", "run a brute-force oracle over a dataset CSV");
    oracle->add_option("--dataset", dataset_file, "dataset CSV")->required();
    oracle->add_option("--op", op, "skyline | skyband | topk | ndk")->capture_default_str();
    oracle->add_option("--k", k, "k")->capture_default_str();
    oracle->add_option("--eps", eps, "weight spread for ndk")->capture_default_str();
    oracle->add_option("--constraints", constraints_file, "constraint file for ndk");
    oracle->add_option("--weights", weights, "weights for topk (default centroid)")
        ->delimiter(',');
    oracle->add_option("--out", out_file, "write the JSON report here (default stdout)");

    bool random = false;
    std::size_t instances = 1000, max_n = 200;
    auto* verify = app.add_subcommand("verify", "check the engine against nd_k_bruteforce");
    verify->add_option("--dataset", dataset_file, "dataset CSV (single-instance mode)");
    verify->add_option("--k", k, "k")->capture_default_str();
    verify->add_option("--mu", mu, "batch size")->capture_default_str();
    verify->add_option("--eps", eps, "weight spread")->capture_default_str();
    verify->add_option("--constraints", constraints_file, "constraint file");
    verify->add_flag("--random-suite", random, "run a randomized instance suite");
    verify->add_option("--instances", instances, "suite size")->capture_default_str();
    verify->add_option("--max-n", max_n, "largest dataset in the suite")->capture_default_str();
    verify->add_option("--seed", seed, "suite seed")->capture_default_str();

    std::vector<std::string> sweep_dists{"uni"}, sweep_eps{"0.01"};
    std::vector<std::size_t> sweep_ns{100000}, sweep_ds{2}, sweep_ks{10}, sweep_mus{100};
    std::vector<std::uint64_t> sweep_seeds{1};
    int threads = 0;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep emitting a CSV report");
    sweep->add_option("--dist", sweep_dists, "distributions")->delimiter(',');
    sweep->add_option("--n", sweep_ns, "dataset sizes")->delimiter(',');
    sweep->add_option("--d", sweep_ds, "dimensions")->delimiter(',');
    sweep->add_option("--k", sweep_ks, "k values")->delimiter(',');
    sweep->add_option("--eps", sweep_eps, "spreads (none|full|decimal)")->delimiter(',');
    sweep->add_option("--mu", sweep_mus, "batch sizes")->delimiter(',');
    sweep->add_option("--seeds", sweep_seeds, "one repetition per seed")->delimiter(',');
    sweep->add_option("--out", out_file, "report CSV path (default stdout)");
    sweep->add_option("--threads", threads, "worker pool size (default: all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(dist, n, d, seed, out_dir);
        if (run_cmd->parsed())
            return cmd_run(lists_dir, k, mu, eps, constraints_file, out_file, reference);
        if (oracle->parsed())
            return cmd_oracle(dataset_file, op, k, eps, constraints_file, weights, out_file);
        if (verify->parsed()) {
            if (random) return cmd_verify_suite(instances, max_n, seed);
            if (dataset_file.empty())
                throw std::runtime_error("verify needs --dataset or --random-suite");
            return cmd_verify_single(dataset_file, k, mu, eps, constraints_file);
        }
        if (sweep->parsed()) {
            SweepSpec spec;
            spec.dists.clear();
            for (const auto& name : sweep_dists) spec.dists.push_back(parse_dist(name));
            spec.ns = sweep_ns;
            spec.ds = sweep_ds;
            spec.ks = sweep_ks;
            spec.spreads = parse_spreads(sweep_eps);
            spec.mus = sweep_mus;
            spec.seeds = sweep_seeds;
            return cmd_sweep(spec, out_file, threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
