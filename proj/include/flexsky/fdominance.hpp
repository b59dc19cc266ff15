#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace flexsky {

/// Closed bounded polytope of non-negative weight vectors. It stands for the
/// family of linear scoring functions f(t) = sum_i w_i * t[A_i] with w ranging
/// over the polytope; the vertex list is what dominance tests evaluate.
struct WeightPolytope {
    std::size_t dim = 0;
    std::vector<std::vector<double>> vertices;
    std::string description;  // "singleton" | "epsilon-box(e)" | "h-rep"
};

/// Counts F-dominance tests performed; one run owns one counter.
struct FdomCounter {
    std::uint64_t count = 0;
};

/// Weight spread around the centroid: none (a single function), a ratio bound
/// in (0, 1], or full (all weights, Pareto semantics).
struct Spread {
    enum class Kind { None, Value, Full };
    Kind kind = Kind::None;
    double value = 0.0;  // meaningful for Kind::Value

    static Spread none() { return {Kind::None, 0.0}; }
    static Spread full() { return {Kind::Full, 1.0}; }
    static Spread of(double eps);      // 0 -> none, (0,1] -> value, else throws
    static Spread parse(const std::string& text);  // "none" | "full" | decimal
    std::string to_string() const;
};

/// Ratio-bounds box prod_i [(1-eps)/d, (1+eps)/d]; vertices are the 2^d
/// corners, deduplicated. none collapses to the centroid singleton; full
/// (eps = 1) reaches [0, 2/d]^d, whose induced F-dominance is Pareto
/// dominance.
WeightPolytope polytope_from_epsilon(std::size_t dim, Spread spread);

struct LinearInequality {
    std::vector<double> coeffs;  // a
    double bound = 0.0;          // a . w <= bound
};

/// Exact vertex enumeration of { w >= 0, a_j . w <= b_j } (plus sum w_i = 1
/// when normalize is set): solve every d-subset of the constraint pool, keep
/// feasible solutions, deduplicate at 1e-9. Rejects unbounded or empty
/// regions and d > 6.
WeightPolytope polytope_from_constraints(std::size_t dim,
                                         const std::vector<LinearInequality>& inequalities,
                                         bool normalize);

/// Constraint file: JSON {dim, inequalities: [{a: [...], b: ...}], normalize}.
WeightPolytope load_polytope(const std::filesystem::path& file);

/// t F-dominates s under W iff f(t) <= f(s) for every f in the family and
/// strictly for some f. With linear scoring both extremes are attained at
/// polytope vertices, so: max_v v.(u-v') <= 0 and min_v v.(u-v') < 0.
/// Increments the counter by exactly one per call.
bool f_dominates(std::span<const double> u, std::span<const double> v,
                 const WeightPolytope& polytope, FdomCounter& counter);

/// Plain Pareto dominance: u <= v component-wise with at least one strict.
bool pareto_dominates(std::span<const double> u, std::span<const double> v);

}  // namespace flexsky
