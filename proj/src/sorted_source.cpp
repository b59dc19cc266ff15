#include "flexsky/sorted_source.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "flexsky/csv.hpp"

namespace flexsky {

SortedSource SortedSource::from_list(RankedList entries) {
    std::sort(entries.begin(), entries.end(), [](const RankedEntry& x, const RankedEntry& y) {
        if (x.value != y.value) return x.value < y.value;
        return x.id < y.id;
    });
    SortedSource s;
    s.entries_ = std::move(entries);
    return s;
}

SortedSource SortedSource::from_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open ranked list " + file.string());
    std::string line;
    if (!std::getline(in, line) || csv::chomp(line) != "id,value")
        throw std::runtime_error(file.string() + ": expected header 'id,value'");
    SortedSource s;
    std::size_t row = 0;  // data rows, header excluded
    while (std::getline(in, line)) {
        ++row;
        auto text = csv::chomp(line);
        if (text.empty()) continue;
        auto fields = csv::split(text);
        double value = 0;
        if (fields.size() != 2 || fields[0].empty() || !csv::parse_double(fields[1], value))
            throw std::runtime_error(file.string() + ": malformed row " + std::to_string(row));
        if (!std::isfinite(value) || value < 0.0)
            throw std::runtime_error(file.string() + ": value must be finite and >= 0 at row " +
                                     std::to_string(row));
        if (!s.entries_.empty() && value < s.entries_.back().value)
            throw std::runtime_error(file.string() + ": sort-order violation at row " +
                                     std::to_string(row));
        s.entries_.push_back({std::string(fields[0]), value});
    }
    return s;
}

const RankedEntry* SortedSource::pull() {
    if (exhausted()) return nullptr;
    return &entries_[pos_++];
}

const RankedEntry* pull(SortedSource& source) { return source.pull(); }

SortedSource open_csv_source(const std::filesystem::path& file) {
    return SortedSource::from_csv(file);
}

std::uint64_t sum_depths(const AccessLog& log) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < log.lists(); ++i) total += log.depth(i);
    return total;
}

}  // namespace flexsky
