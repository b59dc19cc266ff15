#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flexsky/core.hpp"
#include "flexsky/fdominance.hpp"
#include "flexsky/sorted_source.hpp"

namespace flexsky {

/// Insertion-ordered map id -> PartialTuple holding every tuple seen via
/// sorted access and not yet pruned.
class Buffer {
public:
    /// Partial tuple for id, inserted on first sight (at the given round).
    PartialTuple& upsert(const std::string& id, std::size_t dim, std::uint64_t round);
    const PartialTuple* find(std::string_view id) const;

    std::size_t size() const { return slots_.size(); }
    const PartialTuple& at(std::size_t i) const { return slots_[i]; }

    /// Removes all flagged tuples at once, preserving insertion order.
    void erase_flagged(const std::vector<char>& remove);

private:
    std::vector<PartialTuple> slots_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct RunConfig {
    std::size_t k = 1;
    std::size_t mu = 1;  // sorted-access batch size (rounds per stop check)
    WeightPolytope polytope;
    std::vector<double> attr_max;

    /// Runs the dominance passes through the serial reference implementation
    /// instead of the OpenMP kernels. Results and metrics are identical.
    bool reference_kernel = false;

    /// Test instrumentation: invoked after every batch / prune pass.
    std::function<void(Phase, const Buffer&, const ThresholdPoint&, const AccessLog&)>
        on_checkpoint;
};

struct RunMetrics {
    std::vector<std::uint64_t> depth_growing;
    std::vector<std::uint64_t> depth_shrinking;
    std::uint64_t fdom_tests = 0;
    std::size_t buffer_peak = 0;  // buffer size at the end of the growing phase
    std::size_t output_size = 0;
    double elapsed_ms = 0.0;

    std::uint64_t sum_depths() const;
    std::uint64_t sum_depths_growing() const;
};

struct RunResult {
    std::vector<Tuple> result;  // exact values, sorted by id
    RunMetrics metrics;
};

/// Computes ND_k(r; F) from sorted access only. The sources must be a
/// complete vertical partition of one relation; every attribute must carry
/// positive weight somewhere in the polytope (otherwise its values could
/// never be resolved without random access).
RunResult run(std::vector<SortedSource>& sources, const RunConfig& config);

struct GrowingOutcome {
    ThresholdPoint threshold;
    bool stopped_by_dominators = false;  // false: lists exhausted first
    std::uint64_t rounds = 0;
};

/// Growing phase: batches of mu rounds of sorted access (one pull per list)
/// until k distinct buffered tuples have a worst bound F-dominating the
/// threshold point, or the lists are exhausted.
GrowingOutcome growing_phase(std::vector<SortedSource>& sources, const RunConfig& config,
                             Buffer& buffer, AccessLog& log, FdomCounter& counter);

/// Shrinking phase: repeatedly prune every tuple confirmed F-dominated by k
/// buffered tuples (snapshot semantics), then keep deepening in batches of mu
/// rounds while some survivor may still be F-dominated by k tuples and the
/// lists are not exhausted.
void shrinking_phase(std::vector<SortedSource>& sources, const RunConfig& config,
                     Buffer& buffer, AccessLog& log, ThresholdPoint& threshold,
                     FdomCounter& counter, GrowingOutcome& growing);

/// Number of buffered tuples t != s whose worst bound F-dominates the best
/// bound of s: a dominance certificate valid for every completion.
std::size_t confirmed_dominators(const PartialTuple& s, const Buffer& buffer,
                                 const WeightPolytope& polytope,
                                 std::span<const double> attr_max,
                                 const ThresholdPoint& threshold, FdomCounter& counter);

/// Number of buffered tuples t != s whose best bound F-dominates the worst
/// bound of s, i.e. that might F-dominate s under some completion.
std::size_t may_dominate_count(const PartialTuple& s, const Buffer& buffer,
                               const WeightPolytope& polytope,
                               std::span<const double> attr_max,
                               const ThresholdPoint& threshold, FdomCounter& counter);

namespace detail {

/// Fault injection for harness-sensitivity tests only.
struct RunTweaks {
    long prune_threshold_bias = 0;
};

RunResult run_tweaked(std::vector<SortedSource>& sources, const RunConfig& config,
                      const RunTweaks& tweaks);

}  // namespace detail

}  // namespace flexsky
