#include "flexsky/nra.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>

namespace flexsky {

namespace {

// Keep-digging scans run in address order, in fixed chunks, so the reference
// and OpenMP kernels perform exactly the same dominance tests.
constexpr std::size_t kDigChunk = 512;

bool all_exhausted(const std::vector<SortedSource>& sources) {
    for (const auto& s : sources)
        if (!s.exhausted()) return false;
    return true;
}

// Same arithmetic as f_dominates, on raw bound rows.
inline bool dominates_rows(const double* u, const double* v, const WeightPolytope& polytope) {
    bool any_strict = false;
    for (const auto& w : polytope.vertices) {
        double dot = 0.0;
        for (std::size_t a = 0; a < w.size(); ++a) dot += w[a] * (u[a] - v[a]);
        if (dot > 0.0) return false;
        if (dot < 0.0) any_strict = true;
    }
    return any_strict;
}

struct BoundsSnapshot {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<double> wb, bb;  // count x dim each

    const double* wb_row(std::size_t i) const { return wb.data() + i * dim; }
    const double* bb_row(std::size_t i) const { return bb.data() + i * dim; }
};

BoundsSnapshot snapshot_bounds(const Buffer& buffer, std::span<const double> attr_max,
                               const ThresholdPoint& tau) {
    BoundsSnapshot s;
    s.count = buffer.size();
    s.dim = attr_max.size();
    s.wb.resize(s.count * s.dim);
    s.bb.resize(s.count * s.dim);
    for (std::size_t i = 0; i < s.count; ++i) {
        const PartialTuple& t = buffer.at(i);
        double* wb = s.wb.data() + i * s.dim;
        double* bb = s.bb.data() + i * s.dim;
        for (std::size_t a = 0; a < s.dim; ++a) {
            if (t.is_seen(a)) {
                wb[a] = t.values[a];
                bb[a] = t.values[a];
            } else {
                wb[a] = attr_max[a];
                bb[a] = tau.ell[a];
            }
        }
    }
    return s;
}

// Prune pass: flags[s] set when at least `threshold` buffered tuples t != s
// have wb(t) F-dominating bb(s). Each per-s scan runs in buffer order and
// stops at the threshold, so the test count does not depend on the kernel.
std::vector<char> prune_pass(const Buffer& buffer, const RunConfig& config,
                             const ThresholdPoint& tau, std::size_t threshold,
                             FdomCounter& counter) {
    const std::size_t n = buffer.size();
    std::vector<char> flags(n, 0);
    if (config.reference_kernel) {
        for (std::size_t s = 0; s < n; ++s) {
            CompleteVector bb_s = best_bound(buffer.at(s), tau);
            std::size_t found = 0;
            for (std::size_t t = 0; t < n; ++t) {
                if (t == s) continue;
                CompleteVector wb_t = worst_bound(buffer.at(t), config.attr_max);
                if (f_dominates(wb_t, bb_s, config.polytope, counter)) {
                    if (++found >= threshold) {
                        flags[s] = 1;
                        break;
                    }
                }
            }
        }
        return flags;
    }
    BoundsSnapshot snap = snapshot_bounds(buffer, config.attr_max, tau);
    std::uint64_t tests = 0;
#pragma omp parallel for schedule(dynamic, 32) reduction(+ : tests)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
        const double* bb_s = snap.bb_row(static_cast<std::size_t>(s));
        std::size_t found = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (t == static_cast<std::size_t>(s)) continue;
            ++tests;
            if (dominates_rows(snap.wb_row(t), bb_s, config.polytope)) {
                if (++found >= threshold) {
                    flags[s] = 1;
                    break;
                }
            }
        }
    }
    counter.count += tests;
    return flags;
}

// Keep-digging check: does some buffered tuple still have k potential
// F-dominators? Scans chunks in order and stops after the first chunk that
// contains a trigger; every s in a visited chunk is fully evaluated.
bool keep_digging(const Buffer& buffer, const RunConfig& config, const ThresholdPoint& tau,
                  FdomCounter& counter) {
    const std::size_t n = buffer.size();
    if (n == 0 || n - 1 < config.k) return false;  // condition unsatisfiable
    if (config.reference_kernel) {
        for (std::size_t chunk = 0; chunk < n; chunk += kDigChunk) {
            const std::size_t end = std::min(n, chunk + kDigChunk);
            bool trigger = false;
            for (std::size_t s = chunk; s < end; ++s) {
                CompleteVector wb_s = worst_bound(buffer.at(s), config.attr_max);
                std::size_t found = 0;
                for (std::size_t t = 0; t < n; ++t) {
                    if (t == s) continue;
                    CompleteVector bb_t = best_bound(buffer.at(t), tau);
                    if (f_dominates(bb_t, wb_s, config.polytope, counter)) {
                        if (++found >= config.k) {
                            trigger = true;
                            break;
                        }
                    }
                }
            }
            if (trigger) return true;
        }
        return false;
    }
    BoundsSnapshot snap = snapshot_bounds(buffer, config.attr_max, tau);
    for (std::size_t chunk = 0; chunk < n; chunk += kDigChunk) {
        const std::size_t end = std::min(n, chunk + kDigChunk);
        std::uint64_t tests = 0;
        int trigger = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : tests) reduction(| : trigger)
        for (std::int64_t s = static_cast<std::int64_t>(chunk);
             s < static_cast<std::int64_t>(end); ++s) {
            const double* wb_s = snap.wb_row(static_cast<std::size_t>(s));
            std::size_t found = 0;
            for (std::size_t t = 0; t < n; ++t) {
                if (t == static_cast<std::size_t>(s)) continue;
                ++tests;
                if (dominates_rows(snap.bb_row(t), wb_s, config.polytope)) {
                    if (++found >= config.k) {
                        trigger = 1;
                        break;
                    }
                }
            }
        }
        counter.count += tests;
        if (trigger) return true;
    }
    return false;
}

// One round of sorted access: one pull per non-exhausted list.
void sorted_access_round(std::vector<SortedSource>& sources, Phase phase, std::uint64_t round,
                         const RunConfig& config, Buffer& buffer, AccessLog& log,
                         ThresholdPoint& tau) {
    const std::size_t dim = sources.size();
    for (std::size_t i = 0; i < dim; ++i) {
        const RankedEntry* e = sources[i].pull();
        if (!e) continue;
        log.record(i, phase);
        if (e->value > config.attr_max[i])
            throw std::runtime_error("list " + std::to_string(i + 1) + ": value for id '" +
                                     e->id + "' exceeds the declared attribute maximum");
        tau.ell[i] = e->value;
        PartialTuple& p = buffer.upsert(e->id, dim, round);
        if (p.is_seen(i))
            throw std::runtime_error("list " + std::to_string(i + 1) + " emitted id '" + e->id +
                                     "' twice");
        p.set_value(i, e->value);
    }
}

// At least k distinct buffered tuples whose worst bound F-dominates the
// threshold point (Fagin-style stop, lifted to F-dominance)?
bool growing_stop(const Buffer& buffer, const RunConfig& config, const ThresholdPoint& tau,
                  FdomCounter& counter) {
    std::size_t found = 0;
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        CompleteVector wb = worst_bound(buffer.at(i), config.attr_max);
        if (f_dominates(wb, tau.ell, config.polytope, counter)) {
            if (++found >= config.k) return true;
        }
    }
    return false;
}

void validate(const std::vector<SortedSource>& sources, const RunConfig& config) {
    const std::size_t dim = sources.size();
    if (dim == 0) throw std::invalid_argument("need at least one ranked list");
    if (config.k < 1) throw std::invalid_argument("k must be >= 1");
    if (config.mu < 1) throw std::invalid_argument("batch size mu must be >= 1");
    if (config.polytope.dim != dim || config.polytope.vertices.empty())
        throw std::invalid_argument("weight polytope does not match the list count");
    if (config.attr_max.size() != dim)
        throw std::invalid_argument("attr_max does not match the list count");
    for (std::size_t a = 0; a < dim; ++a) {
        double top = 0.0;
        for (const auto& v : config.polytope.vertices) top = std::max(top, v[a]);
        if (top == 0.0)
            throw std::invalid_argument(
                "attribute " + std::to_string(a + 1) +
                " carries zero weight in every scoring function; its values can never be "
                "resolved by sorted access (project it away instead)");
    }
}

GrowingOutcome growing_impl(std::vector<SortedSource>& sources, const RunConfig& config,
                            Buffer& buffer, AccessLog& log, FdomCounter& counter) {
    GrowingOutcome out;
    // ell starts at the attribute maxima; any pull on a list overwrites it.
    // Only a list that never emits (inconsistent input) keeps the fallback.
    out.threshold.ell = config.attr_max;
    while (!all_exhausted(sources)) {
        for (std::size_t r = 0; r < config.mu; ++r) {
            ++out.rounds;
            sorted_access_round(sources, Phase::Growing, out.rounds, config, buffer, log,
                                out.threshold);
            if (all_exhausted(sources)) break;
        }
        out.stopped_by_dominators = growing_stop(buffer, config, out.threshold, counter);
        if (config.on_checkpoint)
            config.on_checkpoint(Phase::Growing, buffer, out.threshold, log);
        if (out.stopped_by_dominators) break;
    }
    return out;
}

// A survivor with an unseen slot cannot be materialized unless the remaining
// entries on that list are pinned to the attribute maximum. This can outlast
// the keep-digging condition only when the buffer holds at most k tuples, in
// which case the result set is already final and deepening merely resolves
// values.
bool needs_resolution(const Buffer& buffer, const RunConfig& config, const ThresholdPoint& tau) {
    const std::size_t dim = config.attr_max.size();
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        const PartialTuple& p = buffer.at(i);
        if (p.fully_seen(dim)) continue;
        for (std::size_t a = 0; a < dim; ++a)
            if (!p.is_seen(a) && tau.ell[a] != config.attr_max[a]) return true;
    }
    return false;
}

void shrinking_impl(std::vector<SortedSource>& sources, const RunConfig& config, Buffer& buffer,
                    AccessLog& log, ThresholdPoint& tau, FdomCounter& counter,
                    GrowingOutcome& state, std::size_t prune_threshold) {
    while (true) {
        std::vector<char> flags = prune_pass(buffer, config, tau, prune_threshold, counter);
        buffer.erase_flagged(flags);
        if (config.on_checkpoint) config.on_checkpoint(Phase::Shrinking, buffer, tau, log);
        if (all_exhausted(sources)) break;
        if (!keep_digging(buffer, config, tau, counter) &&
            !needs_resolution(buffer, config, tau))
            break;
        for (std::size_t r = 0; r < config.mu; ++r) {
            ++state.rounds;
            sorted_access_round(sources, Phase::Shrinking, state.rounds, config, buffer, log,
                                tau);
            if (all_exhausted(sources)) break;
        }
    }
}

}  // namespace

PartialTuple& Buffer::upsert(const std::string& id, std::size_t dim, std::uint64_t round) {
    auto [it, inserted] = index_.try_emplace(id, slots_.size());
    if (inserted) {
        PartialTuple p;
        p.id = id;
        p.values.assign(dim, 0.0);
        p.first_seen_depth = round;
        slots_.push_back(std::move(p));
    }
    return slots_[it->second];
}

const PartialTuple* Buffer::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &slots_[it->second];
}

void Buffer::erase_flagged(const std::vector<char>& remove) {
    std::size_t w = 0;
    for (std::size_t r = 0; r < slots_.size(); ++r) {
        if (remove[r]) {
            index_.erase(slots_[r].id);
            continue;
        }
        if (w != r) {
            slots_[w] = std::move(slots_[r]);
            index_[slots_[w].id] = w;
        }
        ++w;
    }
    slots_.resize(w);
}

std::uint64_t RunMetrics::sum_depths() const {
    std::uint64_t total = 0;
    for (auto v : depth_growing) total += v;
    for (auto v : depth_shrinking) total += v;
    return total;
}

std::uint64_t RunMetrics::sum_depths_growing() const {
    std::uint64_t total = 0;
    for (auto v : depth_growing) total += v;
    return total;
}

GrowingOutcome growing_phase(std::vector<SortedSource>& sources, const RunConfig& config,
                             Buffer& buffer, AccessLog& log, FdomCounter& counter) {
    validate(sources, config);
    return growing_impl(sources, config, buffer, log, counter);
}

void shrinking_phase(std::vector<SortedSource>& sources, const RunConfig& config, Buffer& buffer,
                     AccessLog& log, ThresholdPoint& threshold, FdomCounter& counter,
                     GrowingOutcome& growing) {
    shrinking_impl(sources, config, buffer, log, threshold, counter, growing, config.k);
}

std::size_t confirmed_dominators(const PartialTuple& s, const Buffer& buffer,
                                 const WeightPolytope& polytope,
                                 std::span<const double> attr_max,
                                 const ThresholdPoint& threshold, FdomCounter& counter) {
    CompleteVector bb_s = best_bound(s, threshold);
    std::size_t count = 0;
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        const PartialTuple& t = buffer.at(i);
        if (t.id == s.id) continue;
        CompleteVector wb_t = worst_bound(t, attr_max);
        if (f_dominates(wb_t, bb_s, polytope, counter)) ++count;
    }
    return count;
}

std::size_t may_dominate_count(const PartialTuple& s, const Buffer& buffer,
                               const WeightPolytope& polytope, std::span<const double> attr_max,
                               const ThresholdPoint& threshold, FdomCounter& counter) {
    CompleteVector wb_s = worst_bound(s, attr_max);
    std::size_t count = 0;
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        const PartialTuple& t = buffer.at(i);
        if (t.id == s.id) continue;
        CompleteVector bb_t = best_bound(t, threshold);
        if (f_dominates(bb_t, wb_s, polytope, counter)) ++count;
    }
    return count;
}

namespace detail {

RunResult run_tweaked(std::vector<SortedSource>& sources, const RunConfig& config,
                      const RunTweaks& tweaks) {
    validate(sources, config);
    const auto start = std::chrono::steady_clock::now();
    const std::size_t dim = sources.size();

    Buffer buffer;
    AccessLog log(dim);
    FdomCounter counter;

    GrowingOutcome state = growing_impl(sources, config, buffer, log, counter);

    RunMetrics metrics;
    metrics.buffer_peak = buffer.size();

    const long threshold = static_cast<long>(config.k) + tweaks.prune_threshold_bias;
    if (threshold < 1) throw std::invalid_argument("prune threshold bias out of range");
    shrinking_impl(sources, config, buffer, log, state.threshold, counter, state,
                   static_cast<std::size_t>(threshold));

    RunResult out;
    out.result.reserve(buffer.size());
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        const PartialTuple& p = buffer.at(i);
        Tuple t;
        t.id = p.id;
        t.values.resize(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            if (p.is_seen(a)) {
                t.values[a] = p.values[a];
            } else if (sources[a].exhausted()) {
                throw std::runtime_error("inconsistent sources: id '" + p.id +
                                         "' missing from list " + std::to_string(a + 1) +
                                         " after exhaustion");
            } else if (state.threshold.ell[a] == config.attr_max[a]) {
                // Bounds collapsed: every remaining entry equals the maximum.
                t.values[a] = config.attr_max[a];
            } else {
                throw std::logic_error("result tuple '" + p.id +
                                       "' not fully resolved at termination");
            }
        }
        out.result.push_back(std::move(t));
    }
    std::sort(out.result.begin(), out.result.end(),
              [](const Tuple& a, const Tuple& b) { return a.id < b.id; });

    metrics.depth_growing = log.growing_depths();
    metrics.depth_shrinking = log.shrinking_depths();
    metrics.fdom_tests = counter.count;
    metrics.output_size = out.result.size();
    metrics.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    out.metrics = std::move(metrics);
    return out;
}

}  // namespace detail

RunResult run(std::vector<SortedSource>& sources, const RunConfig& config) {
    return detail::run_tweaked(sources, config, {});
}

}  // namespace flexsky
