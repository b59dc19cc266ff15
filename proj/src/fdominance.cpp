#include "flexsky/fdominance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include <json.hpp>

namespace flexsky {

namespace {

constexpr double kTol = 1e-9;
constexpr std::size_t kMaxDim = 6;  // combinatorial enumeration guard

bool close(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > kTol) return false;
    return true;
}

void dedup_and_sort(std::vector<std::vector<double>>& vertices) {
    std::sort(vertices.begin(), vertices.end());
    std::vector<std::vector<double>> out;
    for (auto& v : vertices) {
        bool dup = false;
        for (const auto& u : out)
            if (close(u, v)) { dup = true; break; }
        if (!dup) out.push_back(std::move(v));
    }
    vertices = std::move(out);
}

// Solves rows(d x d) * w = rhs by Gaussian elimination with partial pivoting.
// Returns false when the system is singular at tolerance.
bool solve_square(std::vector<std::vector<double>> rows, std::vector<double> rhs,
                  std::vector<double>& out) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
        if (std::abs(rows[pivot][col]) < kTol) return false;
        std::swap(rows[pivot], rows[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = rows[r][col] / rows[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) rows[r][c] -= f * rows[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / rows[i][i];
    return true;
}

// One-dimensional null-space direction of a (d-1) x d row set, when the rows
// are independent. Returns false otherwise.
bool nullspace_direction(std::vector<std::vector<double>> rows, std::size_t dim,
                         std::vector<double>& out) {
    // Reduce to row echelon form, tracking pivot columns.
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < dim && r < rows.size(); ++col) {
        std::size_t pivot = r;
        for (std::size_t i = r + 1; i < rows.size(); ++i)
            if (std::abs(rows[i][col]) > std::abs(rows[pivot][col])) pivot = i;
        if (std::abs(rows[pivot][col]) < kTol) continue;
        std::swap(rows[pivot], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            double f = rows[i][col] / rows[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < dim; ++c) rows[i][c] -= f * rows[r][c];
        }
        pivot_col.push_back(col);
        ++r;
    }
    if (r != dim - 1) return false;  // rank-deficient subset
    // The single free column determines the direction.
    std::size_t free_col = 0;
    {
        std::vector<bool> is_pivot(dim, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        for (std::size_t c = 0; c < dim; ++c)
            if (!is_pivot[c]) { free_col = c; break; }
    }
    out.assign(dim, 0.0);
    out[free_col] = 1.0;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        out[pivot_col[i]] = -rows[i][free_col] / rows[i][pivot_col[i]];
    return true;
}

struct ConstraintPool {
    // rows: a . w <= b for inequalities; the normalization row is an equality.
    std::vector<std::vector<double>> lhs;
    std::vector<double> rhs;
    std::size_t user_count = 0;   // leading rows are user inequalities
    bool normalized = false;      // last row is sum w = 1 when set
};

bool feasible(const std::vector<double>& w, const ConstraintPool& pool) {
    for (double x : w)
        if (x < -kTol) return false;
    for (std::size_t i = 0; i < pool.user_count; ++i) {
        double dot = 0;
        for (std::size_t c = 0; c < w.size(); ++c) dot += pool.lhs[i][c] * w[c];
        if (dot > pool.rhs[i] + kTol) return false;
    }
    if (pool.normalized) {
        double sum = 0;
        for (double x : w) sum += x;
        if (std::abs(sum - 1.0) > kTol) return false;
    }
    return true;
}

void enumerate_subsets(std::size_t pool_size, std::size_t take,
                       const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(take);
    // iterative k-combinations
    for (std::size_t i = 0; i < take; ++i) idx[i] = i;
    if (take > pool_size) return;
    while (true) {
        fn(idx);
        std::size_t i = take;
        while (i-- > 0) {
            if (idx[i] != i + pool_size - take) {
                ++idx[i];
                for (std::size_t j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (take == 0) return;
    }
}

// The recession cone {v >= 0, a_j . v <= 0 (, sum v = 0)} is pointed because
// of v >= 0, so the region is unbounded iff the cone has an extreme ray, and
// every extreme ray lies in the null space of d-1 independent active rows.
bool region_unbounded(std::size_t dim, const ConstraintPool& pool) {
    if (pool.normalized) return false;  // v >= 0 and sum v = 0 force v = 0
    std::vector<std::vector<double>> cone_rows;
    for (std::size_t i = 0; i < pool.user_count; ++i) cone_rows.push_back(pool.lhs[i]);
    for (std::size_t a = 0; a < dim; ++a) {
        std::vector<double> row(dim, 0.0);
        row[a] = -1.0;  // -v_a <= 0
        cone_rows.push_back(row);
    }
    auto in_cone = [&](const std::vector<double>& v) {
        double norm = 0;
        for (double x : v) norm = std::max(norm, std::abs(x));
        if (norm < kTol) return false;
        for (const auto& row : cone_rows) {
            double dot = 0;
            for (std::size_t c = 0; c < dim; ++c) dot += row[c] * v[c];
            if (dot > kTol * norm) return false;
        }
        return true;
    };
    if (dim == 1) {
        std::vector<double> v{1.0};
        return in_cone(v);
    }
    bool unbounded = false;
    enumerate_subsets(cone_rows.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
        if (unbounded) return;
        std::vector<std::vector<double>> sub;
        for (auto i : idx) sub.push_back(cone_rows[i]);
        std::vector<double> dir;
        if (!nullspace_direction(std::move(sub), dim, dir)) return;
        if (in_cone(dir)) { unbounded = true; return; }
        for (auto& x : dir) x = -x;
        if (in_cone(dir)) unbounded = true;
    });
    return unbounded;
}

void validate_vertices(const WeightPolytope& p) {
    if (p.vertices.empty())
        throw std::invalid_argument("weight polytope has no vertices");
    bool any_positive = false;
    for (const auto& v : p.vertices) {
        if (v.size() != p.dim)
            throw std::invalid_argument("weight vertex has wrong dimensionality");
        for (double x : v) {
            if (!std::isfinite(x) || x < 0.0)
                throw std::invalid_argument("weight vertices must be finite and >= 0");
            if (x > 0.0) any_positive = true;
        }
    }
    if (!any_positive)
        throw std::invalid_argument("degenerate all-zero weight polytope");
}

}  // namespace

Spread Spread::of(double eps) {
    if (!std::isfinite(eps) || eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("spread must lie in [0, 1] (or be 'none'/'full')");
    if (eps == 0.0) return none();
    return {Kind::Value, eps};
}

Spread Spread::parse(const std::string& text) {
    if (text == "none") return none();
    if (text == "full") return full();
    std::size_t used = 0;
    double eps = 0;
    try {
        eps = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("spread '" + text + "': expected none, full, or a decimal");
    }
    if (used != text.size())
        throw std::invalid_argument("spread '" + text + "': expected none, full, or a decimal");
    return of(eps);
}

std::string Spread::to_string() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Full: return "full";
        case Kind::Value: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", value);
            return buf;
        }
    }
    return "none";
}

WeightPolytope polytope_from_epsilon(std::size_t dim, Spread spread) {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("dimensionality must be in [1, " +
                                    std::to_string(kMaxDim) + "]");
    const double centroid = 1.0 / static_cast<double>(dim);
    WeightPolytope p;
    p.dim = dim;
    if (spread.kind == Spread::Kind::None) {
        p.vertices.push_back(std::vector<double>(dim, centroid));
        p.description = "singleton";
        return p;
    }
    const double eps = spread.kind == Spread::Kind::Full ? 1.0 : spread.value;
    const double lo = centroid * (1.0 - eps);
    const double hi = centroid * (1.0 + eps);
    for (std::uint32_t corner = 0; corner < (1u << dim); ++corner) {
        std::vector<double> v(dim);
        for (std::size_t a = 0; a < dim; ++a) v[a] = (corner >> a & 1u) ? hi : lo;
        p.vertices.push_back(std::move(v));
    }
    dedup_and_sort(p.vertices);
    p.description = "epsilon-box(" + spread.to_string() + ")";
    validate_vertices(p);
    return p;
}

WeightPolytope polytope_from_constraints(std::size_t dim,
                                         const std::vector<LinearInequality>& inequalities,
                                         bool normalize) {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("vertex enumeration supports d in [1, " +
                                    std::to_string(kMaxDim) + "]");
    ConstraintPool pool;
    pool.normalized = normalize;
    for (const auto& ineq : inequalities) {
        if (ineq.coeffs.size() != dim)
            throw std::invalid_argument("inequality has wrong dimensionality");
        pool.lhs.push_back(ineq.coeffs);
        pool.rhs.push_back(ineq.bound);
    }
    pool.user_count = pool.lhs.size();
    for (std::size_t a = 0; a < dim; ++a) {
        std::vector<double> row(dim, 0.0);
        row[a] = -1.0;
        pool.lhs.push_back(std::move(row));
        pool.rhs.push_back(0.0);
    }
    if (normalize) {
        pool.lhs.push_back(std::vector<double>(dim, 1.0));
        pool.rhs.push_back(1.0);
    }

    if (region_unbounded(dim, pool))
        throw std::invalid_argument(
            "weight region is unbounded; add the normalization sum w_i = 1");

    WeightPolytope p;
    p.dim = dim;
    enumerate_subsets(pool.lhs.size(), dim, [&](const std::vector<std::size_t>& idx) {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        for (auto i : idx) {
            rows.push_back(pool.lhs[i]);
            rhs.push_back(pool.rhs[i]);
        }
        std::vector<double> w;
        if (!solve_square(std::move(rows), std::move(rhs), w)) return;
        if (!feasible(w, pool)) return;
        for (auto& x : w)
            if (std::abs(x) < kTol) x = 0.0;
        p.vertices.push_back(std::move(w));
    });
    if (p.vertices.empty())
        throw std::invalid_argument("weight region is empty");
    dedup_and_sort(p.vertices);
    p.description = "h-rep";
    validate_vertices(p);
    return p;
}

WeightPolytope load_polytope(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open constraint file " + file.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("constraint file " + file.string() + ": " + e.what());
    }
    const std::size_t dim = doc.at("dim").get<std::size_t>();
    std::vector<LinearInequality> ineqs;
    for (const auto& item : doc.value("inequalities", nlohmann::json::array())) {
        LinearInequality ineq;
        ineq.coeffs = item.at("a").get<std::vector<double>>();
        ineq.bound = item.at("b").get<double>();
        ineqs.push_back(std::move(ineq));
    }
    return polytope_from_constraints(dim, ineqs, doc.value("normalize", true));
}

bool f_dominates(std::span<const double> u, std::span<const double> v,
                 const WeightPolytope& polytope, FdomCounter& counter) {
    if (u.size() != polytope.dim || v.size() != polytope.dim)
        throw std::invalid_argument("dominance test dimensionality mismatch");
    ++counter.count;
    bool any_strict = false;
    for (const auto& w : polytope.vertices) {
        double dot = 0.0;
        for (std::size_t a = 0; a < w.size(); ++a) dot += w[a] * (u[a] - v[a]);
        if (dot > 0.0) return false;
        if (dot < 0.0) any_strict = true;
    }
    return any_strict;
}

bool pareto_dominates(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("dominance test dimensionality mismatch");
    bool any_strict = false;
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (u[a] > v[a]) return false;
        if (u[a] < v[a]) any_strict = true;
    }
    return any_strict;
}

}  // namespace flexsky
