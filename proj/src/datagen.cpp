#include "flexsky/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "flexsky/csv.hpp"
#include "flexsky/rng.hpp"

namespace flexsky {

namespace {

constexpr std::size_t kMaxDim = 6;

void check_spec(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("dataset size must be >= 1");
    if (spec.d < 1 || spec.d > kMaxDim)
        throw std::invalid_argument("dimensionality must be in [1, " +
                                    std::to_string(kMaxDim) + "]");
}

std::string make_id(std::size_t index) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "t%06zu", index + 1);
    return buf;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

std::string dist_name(GenSpec::Dist dist) {
    return dist == GenSpec::Dist::Uni ? "uni" : "ant";
}

GenSpec::Dist parse_dist(const std::string& name) {
    if (name == "uni") return GenSpec::Dist::Uni;
    if (name == "ant") return GenSpec::Dist::Ant;
    throw std::invalid_argument("unknown distribution '" + name + "' (expected uni or ant)");
}

Dataset gen_uniform(const GenSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);
    std::vector<Tuple> tuples;
    tuples.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        Tuple t;
        t.id = make_id(i);
        t.values.resize(spec.d);
        for (std::size_t a = 0; a < spec.d; ++a) t.values[a] = rng.uniform01();
        tuples.push_back(std::move(t));
    }
    return make_dataset(spec.d, std::move(tuples), std::vector<double>(spec.d, 1.0));
}

Dataset gen_anticorrelated(const GenSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);
    std::vector<Tuple> tuples;
    tuples.reserve(spec.n);
    std::vector<double> perturb(spec.d);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double offset = clamp01(rng.normal(0.5, 0.05));
        double mean = 0.0;
        for (std::size_t a = 0; a < spec.d; ++a) {
            perturb[a] = rng.uniform01();
            mean += perturb[a];
        }
        mean /= static_cast<double>(spec.d);
        Tuple t;
        t.id = make_id(i);
        t.values.resize(spec.d);
        for (std::size_t a = 0; a < spec.d; ++a)
            t.values[a] = clamp01(offset + (perturb[a] - mean));
        tuples.push_back(std::move(t));
    }
    return make_dataset(spec.d, std::move(tuples), std::vector<double>(spec.d, 1.0));
}

Dataset generate(const GenSpec& spec) {
    return spec.dist == GenSpec::Dist::Uni ? gen_uniform(spec) : gen_anticorrelated(spec);
}

Dataset load_dataset_csv(const std::filesystem::path& file,
                         std::optional<std::vector<double>> attr_max) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open dataset " + file.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(file.string() + ": empty file");
    auto header = csv::split(csv::chomp(line));
    if (header.size() < 2 || header[0] != "id")
        throw std::runtime_error(file.string() + ": expected header 'id,a1,...,ad'");
    const std::size_t dim = header.size() - 1;
    for (std::size_t a = 0; a < dim; ++a)
        if (header[a + 1] != "a" + std::to_string(a + 1))
            throw std::runtime_error(file.string() + ": expected header 'id,a1,...,ad'");

    std::vector<Tuple> tuples;
    std::size_t row = 0;  // data rows, header excluded
    while (std::getline(in, line)) {
        ++row;
        auto text = csv::chomp(line);
        if (text.empty()) continue;
        auto fields = csv::split(text);
        if (fields.size() != dim + 1 || fields[0].empty())
            throw std::runtime_error(file.string() + ": malformed row " + std::to_string(row));
        Tuple t;
        t.id = std::string(fields[0]);
        t.values.resize(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            if (!csv::parse_double(fields[a + 1], t.values[a]))
                throw std::runtime_error(file.string() + ": bad value at row " +
                                         std::to_string(row) + ", column " +
                                         std::to_string(a + 2));
            if (!std::isfinite(t.values[a]) || t.values[a] < 0.0)
                throw std::runtime_error(file.string() +
                                         ": values must be finite and >= 0 at row " +
                                         std::to_string(row));
        }
        tuples.push_back(std::move(t));
    }
    return make_dataset(dim, std::move(tuples), std::move(attr_max));
}

void save_dataset_csv(const Dataset& ds, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "id";
    for (std::size_t a = 0; a < ds.dim(); ++a) out << ",a" << a + 1;
    out << '\n';
    for (std::size_t r = 0; r < ds.size(); ++r) {
        out << ds.id_of(r);
        for (std::size_t a = 0; a < ds.dim(); ++a)
            out << ',' << csv::format_double(ds.value(r, a));
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + file.string());
}

void export_partition(const Dataset& ds, const std::filesystem::path& dir,
                      const PartitionMeta& meta) {
    namespace fs = std::filesystem;
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir) || !fs::is_empty(dir))
            throw std::runtime_error("output directory " + dir.string() + " is not empty");
    } else {
        fs::create_directories(dir);
    }

    const auto lists = vertical_partition(ds);
    for (std::size_t a = 0; a < lists.size(); ++a) {
        const fs::path file = dir / ("list_" + std::to_string(a + 1) + ".csv");
        std::ofstream out(file);
        if (!out) throw std::runtime_error("cannot write " + file.string());
        out << "id,value\n";
        for (const auto& e : lists[a])
            out << e.id << ',' << csv::format_double(e.value) << '\n';
        if (!out) throw std::runtime_error("write failed for " + file.string());
    }

    nlohmann::json doc{{"distribution", meta.distribution},
                       {"n", meta.n},
                       {"d", meta.d},
                       {"seed", meta.seed},
                       {"attr_max", meta.attr_max}};
    std::ofstream out(dir / "meta.json");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + (dir / "meta.json").string());
}

PartitionMeta load_partition_meta(const std::filesystem::path& dir) {
    std::ifstream in(dir / "meta.json");
    if (!in) throw std::runtime_error("cannot open " + (dir / "meta.json").string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error((dir / "meta.json").string() + ": " + e.what());
    }
    PartitionMeta meta;
    meta.distribution = doc.value("distribution", "csv");
    meta.n = doc.at("n").get<std::size_t>();
    meta.d = doc.at("d").get<std::size_t>();
    meta.seed = doc.value("seed", std::uint64_t{0});
    meta.attr_max = doc.at("attr_max").get<std::vector<double>>();
    if (meta.d == 0 || meta.attr_max.size() != meta.d)
        throw std::runtime_error((dir / "meta.json").string() + ": inconsistent d/attr_max");
    return meta;
}

std::pair<std::vector<SortedSource>, PartitionMeta> open_partition(
    const std::filesystem::path& dir) {
    PartitionMeta meta = load_partition_meta(dir);
    std::vector<SortedSource> sources;
    sources.reserve(meta.d);
    for (std::size_t a = 0; a < meta.d; ++a)
        sources.push_back(open_csv_source(dir / ("list_" + std::to_string(a + 1) + ".csv")));
    return {std::move(sources), std::move(meta)};
}

}  // namespace flexsky
