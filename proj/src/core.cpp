#include "flexsky/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flexsky {

Dataset::Dataset(std::size_t dim, std::vector<Tuple> tuples,
                 std::optional<std::vector<double>> attr_max)
    : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("dataset dimensionality must be >= 1");
    if (tuples.empty()) throw std::invalid_argument("dataset must contain at least one tuple");

    ids_.reserve(tuples.size());
    values_.reserve(tuples.size() * dim);
    for (auto& t : tuples) {
        if (t.values.size() != dim)
            throw std::invalid_argument("tuple '" + t.id + "': expected " +
                                        std::to_string(dim) + " values, got " +
                                        std::to_string(t.values.size()));
        for (double v : t.values) {
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("tuple '" + t.id +
                                            "': attribute values must be finite and >= 0");
        }
        ids_.push_back(std::move(t.id));
        values_.insert(values_.end(), t.values.begin(), t.values.end());
    }

    index_.reserve(ids_.size());
    for (std::size_t r = 0; r < ids_.size(); ++r) {
        if (!index_.emplace(ids_[r], r).second)
            throw std::invalid_argument("duplicate tuple id '" + ids_[r] + "'");
    }

    if (attr_max) {
        attr_max_ = std::move(*attr_max);
        if (attr_max_.size() != dim)
            throw std::invalid_argument("attr_max has wrong dimensionality");
        for (double m : attr_max_)
            if (!std::isfinite(m)) throw std::invalid_argument("attr_max must be finite");
        for (std::size_t r = 0; r < size(); ++r)
            for (std::size_t a = 0; a < dim_; ++a)
                if (value(r, a) > attr_max_[a])
                    throw std::invalid_argument("tuple '" + ids_[r] +
                                                "': value exceeds attr_max on attribute " +
                                                std::to_string(a + 1));
    } else {
        attr_max_.assign(dim, 0.0);
        for (std::size_t r = 0; r < size(); ++r)
            for (std::size_t a = 0; a < dim_; ++a)
                attr_max_[a] = std::max(attr_max_[a], value(r, a));
    }
}

std::optional<std::size_t> Dataset::row_of(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Dataset make_dataset(std::size_t dim, std::vector<Tuple> tuples,
                     std::optional<std::vector<double>> attr_max) {
    return Dataset(dim, std::move(tuples), std::move(attr_max));
}

std::vector<RankedList> vertical_partition(const Dataset& ds) {
    std::vector<RankedList> lists(ds.dim());
    for (std::size_t a = 0; a < ds.dim(); ++a) {
        RankedList& list = lists[a];
        list.reserve(ds.size());
        for (std::size_t r = 0; r < ds.size(); ++r)
            list.push_back({ds.id_of(r), ds.value(r, a)});
        std::sort(list.begin(), list.end(), [](const RankedEntry& x, const RankedEntry& y) {
            if (x.value != y.value) return x.value < y.value;
            return x.id < y.id;
        });
    }
    return lists;
}

CompleteVector best_bound(const PartialTuple& t, const ThresholdPoint& threshold) {
    CompleteVector out(threshold.ell.size());
    for (std::size_t a = 0; a < out.size(); ++a)
        out[a] = t.is_seen(a) ? t.values[a] : threshold.ell[a];
    return out;
}

CompleteVector worst_bound(const PartialTuple& t, std::span<const double> attr_max) {
    CompleteVector out(attr_max.size());
    for (std::size_t a = 0; a < out.size(); ++a)
        out[a] = t.is_seen(a) ? t.values[a] : attr_max[a];
    return out;
}

}  // namespace flexsky
