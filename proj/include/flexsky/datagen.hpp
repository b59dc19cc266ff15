#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flexsky/core.hpp"
#include "flexsky/sorted_source.hpp"

namespace flexsky {

struct GenSpec {
    enum class Dist { Uni, Ant };
    Dist dist = Dist::Uni;
    std::size_t n = 1;
    std::size_t d = 2;
    std::uint64_t seed = 0;
};

std::string dist_name(GenSpec::Dist dist);
GenSpec::Dist parse_dist(const std::string& name);

/// n tuples i.i.d. uniform in [0,1]^d; attr_max = (1,...,1); ids t000001...
Dataset gen_uniform(const GenSpec& spec);

/// Anticorrelated benchmark data: a tight plane offset c (normal around 0.5)
/// with zero-sum uniform perturbations spread along the hyperplane
/// sum x_i = c*d, clamped to [0,1]^d.
Dataset gen_anticorrelated(const GenSpec& spec);

Dataset generate(const GenSpec& spec);

/// Dataset CSV: header `id,a1,...,ad`, one row per tuple, decimal values.
Dataset load_dataset_csv(const std::filesystem::path& file,
                         std::optional<std::vector<double>> attr_max = std::nullopt);
void save_dataset_csv(const Dataset& ds, const std::filesystem::path& file);

struct PartitionMeta {
    std::string distribution;  // "uni" | "ant" | "csv"
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;
    std::vector<double> attr_max;
};

/// Writes list_1.csv ... list_d.csv plus meta.json into dir, which must be
/// empty or absent.
void export_partition(const Dataset& ds, const std::filesystem::path& dir,
                      const PartitionMeta& meta);

PartitionMeta load_partition_meta(const std::filesystem::path& dir);

/// Opens the d file-backed sources of an exported partition.
std::pair<std::vector<SortedSource>, PartitionMeta> open_partition(
    const std::filesystem::path& dir);

}  // namespace flexsky
