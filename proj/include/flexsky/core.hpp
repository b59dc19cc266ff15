#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flexsky {

/// A fully specified point in attribute space (cost convention: lower is
/// better). Used for worst/best bounds and for the threshold point when it
/// enters a dominance test.
using CompleteVector = std::vector<double>;

struct Tuple {
    std::string id;
    std::vector<double> values;
};

/// Materialized relation: n tuples over d non-negative attributes, plus a
/// declared per-attribute domain maximum used to complete worst bounds.
class Dataset {
public:
    Dataset(std::size_t dim, std::vector<Tuple> tuples,
            std::optional<std::vector<double>> attr_max = std::nullopt);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return ids_.size(); }
    const std::vector<double>& attr_max() const { return attr_max_; }

    const std::string& id_of(std::size_t row) const { return ids_[row]; }
    std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * dim_, dim_};
    }
    double value(std::size_t row, std::size_t attr) const {
        return values_[row * dim_ + attr];
    }
    /// Row index for an id, if present. Only oracles and tests need this;
    /// the query engine never sees a Dataset.
    std::optional<std::size_t> row_of(std::string_view id) const;

private:
    std::size_t dim_;
    std::vector<std::string> ids_;
    std::vector<double> values_;  // row-major, size() * dim()
    std::vector<double> attr_max_;
    std::unordered_map<std::string_view, std::size_t> index_;
};

/// Validated constructor. attr_max defaults to the component-wise maximum
/// over the tuples. Rejects duplicate ids, negative or non-finite values,
/// dimension mismatches, and values above attr_max.
Dataset make_dataset(std::size_t dim, std::vector<Tuple> tuples,
                     std::optional<std::vector<double>> attr_max = std::nullopt);

struct RankedEntry {
    std::string id;
    double value;
};
using RankedList = std::vector<RankedEntry>;

/// Middleware-style vertical partition: list i holds (id, t[A_i]) for every
/// tuple, sorted by value ascending, ties broken by id ascending.
std::vector<RankedList> vertical_partition(const Dataset& ds);

/// Last value extracted by sorted access on each list. Component-wise
/// non-decreasing over a run.
struct ThresholdPoint {
    std::vector<double> ell;
};

/// A tuple under construction during a no-random-access run: per-attribute
/// seen/unseen slots. Tuples enter a buffer only via sorted access, so at
/// least one slot is always seen.
struct PartialTuple {
    std::string id;
    std::vector<double> values;   // meaningful only where seen
    std::uint32_t seen_mask = 0;
    std::uint64_t first_seen_depth = 0;  // round of first appearance

    bool is_seen(std::size_t attr) const { return seen_mask >> attr & 1u; }
    void set_value(std::size_t attr, double v) {
        values[attr] = v;
        seen_mask |= 1u << attr;
    }
    bool fully_seen(std::size_t dim) const {
        return seen_mask + 1 == 1u << dim;
    }
};

/// Component-wise best (lowest) completion consistent with sorted order:
/// seen value where present, else the current threshold value.
CompleteVector best_bound(const PartialTuple& t, const ThresholdPoint& threshold);

/// Component-wise worst completion: seen value where present, else the
/// declared attribute maximum.
CompleteVector worst_bound(const PartialTuple& t, std::span<const double> attr_max);

}  // namespace flexsky
