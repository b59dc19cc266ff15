#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "support.hpp"

using namespace flexsky;
namespace ts = flexsky::testsupport;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("flexsky_src_test_" +
                                                  std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& dir, const char* name, const char* body) {
    fs::path file = dir / name;
    std::ofstream out(file);
    out << body;
    return file;
}

}  // namespace

// The module's whole read surface is pull(); by-id access is unrepresentable.
static_assert(!requires(SortedSource s, std::string id) { s.value_at(id); });
static_assert(!requires(SortedSource s, std::string id) { s[id]; });
static_assert(!requires(SortedSource s, std::size_t i) { s.entry(i); });

TEST_SUITE("sorted_source") {

TEST_CASE("pull walks the example list in order and exhausts cleanly") {
    auto lists = vertical_partition(ts::ex9());
    SortedSource r2 = SortedSource::from_list(lists[1]);
    const RankedEntry* e = r2.pull();
    CHECK(e->id == "i");
    CHECK(e->value == 1.0);
    e = r2.pull();
    CHECK(e->id == "g");
    CHECK(e->value == 1.5);
    e = r2.pull();
    CHECK(e->id == "e");
    CHECK(e->value == 2.0);
    CHECK(r2.depth() == 3);

    SortedSource r1 = SortedSource::from_list(lists[0]);
    for (int i = 0; i < 8; ++i) r1.pull();
    const RankedEntry* ninth = r1.pull();
    REQUIRE(ninth != nullptr);
    CHECK(ninth->id == "g");
    CHECK(ninth->value == 9.0);
    CHECK(r1.pull() == nullptr);
    CHECK(r1.exhausted());
    CHECK(r1.pull() == nullptr);  // stays exhausted, no wraparound
    CHECK(r1.depth() == 9);

    SortedSource empty = SortedSource::from_list({});
    CHECK(empty.exhausted());
    CHECK(empty.pull() == nullptr);
}

TEST_CASE("csv sources validate eagerly") {
    TempDir tmp;
    auto lists = vertical_partition(ts::ex9());
    {
        std::ofstream out(tmp.path / "r1.csv");
        out << "id,value\n";
        for (const auto& e : lists[0]) out << e.id << ',' << e.value << '\n';
    }
    SortedSource good = open_csv_source(tmp.path / "r1.csv");
    CHECK(good.size() == 9);
    CHECK(good.pull()->id == "a");

    auto bad = write_file(tmp.path, "bad.csv", "id,value\nx,2.0\ny,1.0\n");
    CHECK_THROWS_WITH_AS(open_csv_source(bad), doctest::Contains("row 2"),
                         std::runtime_error);

    auto header_only = write_file(tmp.path, "empty.csv", "id,value\n");
    SortedSource empty = open_csv_source(header_only);
    CHECK(empty.exhausted());

    auto no_header = write_file(tmp.path, "nohdr.csv", "x,1.0\n");
    CHECK_THROWS_AS(open_csv_source(no_header), std::runtime_error);
    auto garbage = write_file(tmp.path, "garbage.csv", "id,value\nx,abc\n");
    CHECK_THROWS_WITH_AS(open_csv_source(garbage), doctest::Contains("row 1"),
                         std::runtime_error);
    CHECK_THROWS_AS(open_csv_source(tmp.path / "missing.csv"), std::runtime_error);
}

TEST_CASE("access log splits depth by phase and sums exactly") {
    AccessLog log(2);
    log.record(0, Phase::Growing);
    log.record(1, Phase::Growing);
    log.record(0, Phase::Growing);
    log.record(0, Phase::Shrinking);
    CHECK(log.growing(0) == 2);
    CHECK(log.shrinking(0) == 1);
    CHECK(log.depth(0) == 3);
    CHECK(log.depth(1) == 1);
    CHECK(sum_depths(log) == 4);

    AccessLog pair(2);
    for (int i = 0; i < 3; ++i) {
        pair.record(0, Phase::Growing);
        pair.record(1, Phase::Shrinking);
    }
    CHECK(sum_depths(pair) == 6);
}

TEST_CASE("full consumption of the example costs 18 accesses") {
    auto sources = ts::sources_for(ts::ex9());
    AccessLog log(2);
    for (std::size_t i = 0; i < sources.size(); ++i)
        while (sources[i].pull()) log.record(i, Phase::Growing);
    CHECK(sum_depths(log) == 18);
    for (std::size_t i = 0; i < sources.size(); ++i)
        CHECK(log.depth(i) == sources[i].depth());
}

}  // TEST_SUITE
