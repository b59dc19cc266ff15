#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace flexsky;
namespace ts = flexsky::testsupport;

namespace {

std::vector<double> random_point(Rng& rng, std::size_t d) {
    std::vector<double> v(d);
    for (auto& x : v) x = rng.uniform01();
    return v;
}

}  // namespace

TEST_SUITE("fdominance") {

TEST_CASE("epsilon boxes") {
    WeightPolytope tight = polytope_from_epsilon(2, Spread::of(0.01));
    REQUIRE(tight.vertices.size() == 4);
    CHECK(tight.vertices[0] == std::vector<double>{0.495, 0.495});
    CHECK(tight.vertices[3] == std::vector<double>{0.505, 0.505});

    WeightPolytope none = polytope_from_epsilon(2, Spread::none());
    REQUIRE(none.vertices.size() == 1);
    CHECK(none.vertices[0] == std::vector<double>{0.5, 0.5});
    CHECK(none.description == "singleton");

    WeightPolytope full = polytope_from_epsilon(3, Spread::full());
    CHECK(full.vertices.size() == 8);
    for (const auto& v : full.vertices)
        for (double x : v) CHECK((x == 0.0 || x == doctest::Approx(2.0 / 3.0)));

    CHECK_THROWS_AS(Spread::of(1.5), std::invalid_argument);
    CHECK_THROWS_AS(Spread::of(-0.1), std::invalid_argument);
    CHECK(Spread::of(0.0).kind == Spread::Kind::None);
    CHECK(Spread::parse("0.2").value == 0.2);
    CHECK_THROWS_AS(Spread::parse("bogus"), std::invalid_argument);
}

TEST_CASE("constraint polytopes by exact vertex enumeration") {
    WeightPolytope closure = ts::closure_w1_ge_w2();
    REQUIRE(closure.vertices.size() == 2);
    CHECK(closure.vertices[0] == std::vector<double>{0.5, 0.5});
    CHECK(closure.vertices[1] == std::vector<double>{1.0, 0.0});

    WeightPolytope simplex = polytope_from_constraints(2, {}, true);
    REQUIRE(simplex.vertices.size() == 2);
    CHECK(simplex.vertices[0] == std::vector<double>{0.0, 1.0});
    CHECK(simplex.vertices[1] == std::vector<double>{1.0, 0.0});

    CHECK_THROWS_WITH_AS(
        polytope_from_constraints(2, {{{1.0, 0.0}, 0.3}, {{-1.0, 0.0}, -0.6}}, true),
        doctest::Contains("empty"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(polytope_from_constraints(2, {{{1.0, 0.0}, 0.5}}, false),
                         doctest::Contains("unbounded"), std::invalid_argument);
    CHECK_THROWS_AS(polytope_from_constraints(7, {}, true), std::invalid_argument);

    // box without normalization stays legal
    WeightPolytope box = polytope_from_constraints(
        2, {{{1.0, 0.0}, 0.6}, {{0.0, 1.0}, 0.4}}, false);
    CHECK(box.vertices.size() == 4);
}

TEST_CASE("f-dominance on the worked example") {
    WeightPolytope w = ts::closure_w1_ge_w2();
    FdomCounter counter;
    const std::vector<double> e{6.0, 2.0}, i{8.0, 1.0}, a{3.0, 8.0}, h{5.0, 7.0};
    const std::vector<double> c{7.0, 3.0}, g{9.0, 1.5};
    CHECK(f_dominates(e, i, w, counter));   // i can never beat e
    CHECK(f_dominates(a, h, w, counter));   // h can never beat a
    CHECK(f_dominates(c, g, w, counter));   // g is also dominated by c
    CHECK_FALSE(f_dominates(e, e, w, counter));
    CHECK(counter.count == 4);
    CHECK_THROWS_AS(f_dominates(std::vector<double>{1.0}, e, w, counter),
                    std::invalid_argument);
}

TEST_CASE("pareto dominance") {
    CHECK(pareto_dominates(std::vector<double>{3.0, 8.0}, std::vector<double>{4.0, 9.0}));
    CHECK_FALSE(pareto_dominates(std::vector<double>{1.0, 2.0}, std::vector<double>{2.0, 1.0}));
    CHECK_FALSE(pareto_dominates(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}));
}

TEST_CASE("irreflexivity and transitivity") {
    Rng rng(2024);
    WeightPolytope w = polytope_from_epsilon(3, Spread::of(0.2));
    FdomCounter counter;
    for (int trial = 0; trial < 2000; ++trial) {
        auto u = random_point(rng, 3);
        CHECK_FALSE(f_dominates(u, u, w, counter));
        auto v = random_point(rng, 3);
        auto z = random_point(rng, 3);
        if (f_dominates(u, v, w, counter) && f_dominates(v, z, w, counter))
            CHECK(f_dominates(u, z, w, counter));
    }
}

TEST_CASE("singleton collapses to direct score comparison") {
    Rng rng(7);
    WeightPolytope w = polytope_from_epsilon(2, Spread::none());
    FdomCounter counter;
    for (int trial = 0; trial < 2000; ++trial) {
        auto u = random_point(rng, 2);
        auto v = random_point(rng, 2);
        const double su = 0.5 * (u[0] + u[1]);
        const double sv = 0.5 * (v[0] + v[1]);
        CHECK(f_dominates(u, v, w, counter) == (su < sv));
    }
}

TEST_CASE("full spread collapses to pareto dominance") {
    Rng rng(8);
    FdomCounter counter;
    for (std::size_t d = 2; d <= 4; ++d) {
        WeightPolytope w = polytope_from_epsilon(d, Spread::full());
        for (int trial = 0; trial < 3000; ++trial) {
            auto u = random_point(rng, d);
            auto v = random_point(rng, d);
            CHECK(f_dominates(u, v, w, counter) == pareto_dominates(u, v));
        }
    }
}

TEST_CASE("monotone nesting across epsilon boxes") {
    Rng rng(9);
    WeightPolytope inner = polytope_from_epsilon(2, Spread::of(0.05));
    WeightPolytope outer = polytope_from_epsilon(2, Spread::of(0.3));
    FdomCounter counter;
    for (int trial = 0; trial < 3000; ++trial) {
        auto u = random_point(rng, 2);
        auto v = random_point(rng, 2);
        if (f_dominates(u, v, outer, counter)) CHECK(f_dominates(u, v, inner, counter));
    }
}

TEST_CASE("scale invariance of the vertex test") {
    Rng rng(10);
    WeightPolytope w = ts::closure_w1_ge_w2();
    WeightPolytope scaled = w;
    for (auto& vertex : scaled.vertices)
        for (auto& x : vertex) x *= 37.5;
    FdomCounter counter;
    for (int trial = 0; trial < 2000; ++trial) {
        auto u = random_point(rng, 2);
        auto v = random_point(rng, 2);
        CHECK(f_dominates(u, v, w, counter) == f_dominates(u, v, scaled, counter));
    }
}

TEST_CASE("degenerate all-zero polytope is rejected") {
    // w >= 0 together with w1 <= 0, w2 <= 0 pins the region to the origin
    CHECK_THROWS_WITH_AS(
        polytope_from_constraints(2, {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}}, false),
        doctest::Contains("all-zero"), std::invalid_argument);
}

TEST_CASE("constraint file round-trip") {
    auto dir = std::filesystem::temp_directory_path() / "flexsky_polytope_test";
    std::filesystem::create_directories(dir);
    auto file = dir / "w1_ge_w2.json";
    {
        std::ofstream out(file);
        out << R"({"dim": 2, "inequalities": [{"a": [-1.0, 1.0], "b": 0.0}], "normalize": true})";
    }
    WeightPolytope w = load_polytope(file);
    CHECK(w.vertices == ts::closure_w1_ge_w2().vertices);
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
