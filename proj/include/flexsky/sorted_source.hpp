#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "flexsky/core.hpp"

namespace flexsky {

/// One ranked list, consumable by sorted access only: pull() hands out the
/// next (id, value) pair in non-decreasing value order. There is no by-id
/// lookup; exhaustion is a normal condition, not an error.
class SortedSource {
public:
    /// In-memory source; entries are sorted on construction (value asc,
    /// id asc on ties).
    static SortedSource from_list(RankedList entries);

    /// File-backed source over the ranked-list CSV format (`id,value` header,
    /// rows sorted ascending). The file is validated eagerly; out-of-order or
    /// malformed rows are rejected with their row number.
    static SortedSource from_csv(const std::filesystem::path& file);

    /// Next pair in order, or nullptr once exhausted. Advances depth by one.
    const RankedEntry* pull();

    bool exhausted() const { return pos_ == entries_.size(); }
    std::size_t depth() const { return pos_; }
    std::size_t size() const { return entries_.size(); }

private:
    SortedSource() = default;
    std::vector<RankedEntry> entries_;
    std::size_t pos_ = 0;
};

/// Spec'd operation names.
const RankedEntry* pull(SortedSource& source);
SortedSource open_csv_source(const std::filesystem::path& file);

enum class Phase { Growing, Shrinking };

/// Per-list sorted-access counters, attributed to the phase that made them.
class AccessLog {
public:
    explicit AccessLog(std::size_t lists) : growing_(lists, 0), shrinking_(lists, 0) {}

    void record(std::size_t list, Phase phase) {
        (phase == Phase::Growing ? growing_ : shrinking_)[list]++;
    }
    std::size_t lists() const { return growing_.size(); }
    std::uint64_t growing(std::size_t list) const { return growing_[list]; }
    std::uint64_t shrinking(std::size_t list) const { return shrinking_[list]; }
    std::uint64_t depth(std::size_t list) const { return growing_[list] + shrinking_[list]; }
    const std::vector<std::uint64_t>& growing_depths() const { return growing_; }
    const std::vector<std::uint64_t>& shrinking_depths() const { return shrinking_; }

private:
    std::vector<std::uint64_t> growing_;
    std::vector<std::uint64_t> shrinking_;
};

/// sumDepths: total sorted accesses across all lists.
std::uint64_t sum_depths(const AccessLog& log);

}  // namespace flexsky
