#include "flexsky/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace flexsky {

std::set<std::string> skyline(const Dataset& ds) { return skyband(ds, 1); }

std::set<std::string> skyband(const Dataset& ds, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::set<std::string> out;
    for (std::size_t t = 0; t < ds.size(); ++t) {
        std::size_t dominators = 0;
        for (std::size_t s = 0; s < ds.size() && dominators < k; ++s) {
            if (s == t) continue;
            if (pareto_dominates(ds.row(s), ds.row(t))) ++dominators;
        }
        if (dominators < k) out.insert(ds.id_of(t));
    }
    return out;
}

std::set<std::string> top_k(const Dataset& ds, std::span<const double> weights, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (weights.size() != ds.dim())
        throw std::invalid_argument("weight vector has wrong dimensionality");
    std::vector<double> scores(ds.size());
    for (std::size_t t = 0; t < ds.size(); ++t) {
        double score = 0;
        for (std::size_t a = 0; a < ds.dim(); ++a) score += weights[a] * ds.value(t, a);
        scores[t] = score;
    }
    std::set<std::string> out;
    for (std::size_t t = 0; t < ds.size(); ++t) {
        std::size_t rank = 1;
        for (std::size_t s = 0; s < ds.size(); ++s)
            if (scores[s] < scores[t]) ++rank;
        if (rank <= k) out.insert(ds.id_of(t));
    }
    return out;
}

std::set<std::string> nd_k_bruteforce(const Dataset& ds, const WeightPolytope& polytope,
                                      std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (polytope.dim != ds.dim())
        throw std::invalid_argument("polytope has wrong dimensionality");
    FdomCounter scratch;
    std::set<std::string> out;
    for (std::size_t t = 0; t < ds.size(); ++t) {
        std::size_t dominators = 0;
        for (std::size_t s = 0; s < ds.size() && dominators < k; ++s) {
            if (s == t) continue;
            if (f_dominates(ds.row(s), ds.row(t), polytope, scratch)) ++dominators;
        }
        if (dominators < k) out.insert(ds.id_of(t));
    }
    return out;
}

std::size_t min_stop_depth(const Dataset& ds, const WeightPolytope& polytope, std::size_t k,
                           std::span<const double> attr_max) {
    if (attr_max.size() != ds.dim())
        throw std::invalid_argument("attr_max has wrong dimensionality");
    const std::size_t n = ds.size();
    const std::size_t d = ds.dim();

    // Per-attribute access order: value ascending, id ascending on ties.
    std::vector<std::vector<std::size_t>> order(d, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < d; ++a) {
        auto& rows = order[a];
        for (std::size_t r = 0; r < n; ++r) rows[r] = r;
        std::sort(rows.begin(), rows.end(), [&](std::size_t x, std::size_t y) {
            if (ds.value(x, a) != ds.value(y, a)) return ds.value(x, a) < ds.value(y, a);
            return ds.id_of(x) < ds.id_of(y);
        });
    }

    // Worst bounds start at the attribute maxima and tighten as rows surface.
    std::vector<double> wb(n * d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t a = 0; a < d; ++a) wb[r * d + a] = attr_max[a];
    std::vector<char> seen(n, 0);
    std::vector<double> tau(d);
    FdomCounter scratch;

    for (std::size_t depth = 1; depth <= n; ++depth) {
        for (std::size_t a = 0; a < d; ++a) {
            const std::size_t row = order[a][depth - 1];
            wb[row * d + a] = ds.value(row, a);
            tau[a] = ds.value(row, a);
            seen[row] = 1;
        }
        std::size_t found = 0;
        for (std::size_t r = 0; r < n && found < k; ++r) {
            if (!seen[r]) continue;
            std::span<const double> wb_r(wb.data() + r * d, d);
            if (f_dominates(wb_r, tau, polytope, scratch)) ++found;
        }
        if (found >= k) return depth;
    }
    return n;
}

}  // namespace flexsky
