#pragma once

#include <set>
#include <span>
#include <string>

#include "flexsky/core.hpp"
#include "flexsky/fdominance.hpp"

namespace flexsky {

/// Brute-force references over the materialized relation. These are exempt
/// from the no-random-access rule: they exist to certify the engine, so they
/// stay deliberately naive (pairwise scans, no indexing).

/// Tuples Pareto-dominated by no other tuple.
std::set<std::string> skyline(const Dataset& ds);

/// Tuples Pareto-dominated by fewer than k other tuples.
std::set<std::string> skyband(const Dataset& ds, std::size_t k);

/// Ties-inclusive top-k: rank(t) = 1 + |{s : f(s) < f(t)}| <= k for the
/// linear score with the given weights. The set may exceed k on boundary ties.
std::set<std::string> top_k(const Dataset& ds, std::span<const double> weights, std::size_t k);

/// Tuples F-dominated by fewer than k other tuples (quadratic vertex tests).
std::set<std::string> nd_k_bruteforce(const Dataset& ds, const WeightPolytope& polytope,
                                      std::size_t k);

/// Smallest uniform depth at which k distinct seen tuples have a worst bound
/// F-dominating the threshold point; N when no depth qualifies. Replays the
/// ranked lists directly from the dataset, independent of the engine.
std::size_t min_stop_depth(const Dataset& ds, const WeightPolytope& polytope, std::size_t k,
                           std::span<const double> attr_max);

}  // namespace flexsky
