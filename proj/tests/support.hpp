#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "flexsky/core.hpp"
#include "flexsky/datagen.hpp"
#include "flexsky/fdominance.hpp"
#include "flexsky/nra.hpp"
#include "flexsky/oracles.hpp"
#include "flexsky/report.hpp"
#include "flexsky/rng.hpp"

namespace flexsky::testsupport {

/// The nine locations of the worked example: two ranked distance lists.
inline Dataset ex9() {
    std::vector<Tuple> tuples{
        {"a", {3.0, 8.0}}, {"b", {8.0, 6.0}}, {"c", {7.0, 3.0}},
        {"d", {4.0, 9.0}}, {"e", {6.0, 2.0}}, {"f", {6.0, 9.0}},
        {"g", {9.0, 1.5}}, {"h", {5.0, 7.0}}, {"i", {8.0, 1.0}},
    };
    return make_dataset(2, std::move(tuples), std::vector<double>{9.0, 9.0});
}

/// Closure of the "first list matters more" family: w1 >= w2, normalized.
/// Vertices: (0.5, 0.5) and (1, 0).
inline WeightPolytope closure_w1_ge_w2() {
    return polytope_from_constraints(2, {{{-1.0, 1.0}, 0.0}}, true);
}

inline std::set<std::string> ids_of(const std::vector<Tuple>& tuples) {
    std::set<std::string> out;
    for (const auto& t : tuples) out.insert(t.id);
    return out;
}

inline std::vector<SortedSource> sources_for(const Dataset& ds) {
    std::vector<SortedSource> sources;
    for (auto& list : vertical_partition(ds)) sources.push_back(SortedSource::from_list(std::move(list)));
    return sources;
}

inline std::set<std::string> set_of(std::initializer_list<const char*> ids) {
    std::set<std::string> out;
    for (const char* id : ids) out.insert(id);
    return out;
}

/// Independent scalar-NRA growing-stop oracle for a single scoring function:
/// smallest uniform depth at which k seen tuples have a worst score strictly
/// below the threshold score.
inline std::size_t scalar_nra_growing_depth(const Dataset& ds, std::span<const double> w,
                                            std::size_t k) {
    const std::size_t n = ds.size();
    const std::size_t d = ds.dim();
    std::vector<std::vector<std::size_t>> order(d, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t r = 0; r < n; ++r) order[a][r] = r;
        std::sort(order[a].begin(), order[a].end(), [&](std::size_t x, std::size_t y) {
            if (ds.value(x, a) != ds.value(y, a)) return ds.value(x, a) < ds.value(y, a);
            return ds.id_of(x) < ds.id_of(y);
        });
    }
    std::vector<std::vector<double>> worst(n);
    for (std::size_t r = 0; r < n; ++r) worst[r] = ds.attr_max();
    std::vector<char> seen(n, 0);
    std::vector<double> tau(d, 0.0);
    for (std::size_t depth = 1; depth <= n; ++depth) {
        for (std::size_t a = 0; a < d; ++a) {
            std::size_t row = order[a][depth - 1];
            worst[row][a] = ds.value(row, a);
            tau[a] = ds.value(row, a);
            seen[row] = 1;
        }
        double tau_score = 0;
        for (std::size_t a = 0; a < d; ++a) tau_score += w[a] * tau[a];
        std::size_t count = 0;
        for (std::size_t r = 0; r < n && count < k; ++r) {
            if (!seen[r]) continue;
            double score = 0;
            for (std::size_t a = 0; a < d; ++a) score += w[a] * worst[r][a];
            if (score < tau_score) ++count;
        }
        if (count >= k) return depth;
    }
    return n;
}

}  // namespace flexsky::testsupport
