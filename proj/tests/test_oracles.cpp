#include <doctest.h>

#include "support.hpp"

using namespace flexsky;
namespace ts = flexsky::testsupport;

TEST_SUITE("oracles") {

TEST_CASE("worked-example result sets") {
    Dataset ex = ts::ex9();
    CHECK(skyline(ex) == ts::set_of({"a", "h", "e", "i"}));
    CHECK(skyband(ex, 2) == ts::set_of({"a", "h", "e", "i", "d", "c", "g"}));
    const std::vector<double> avg{0.5, 0.5};
    CHECK(top_k(ex, avg, 2) == ts::set_of({"e", "i"}));
    CHECK(top_k(ex, avg, 1) == ts::set_of({"e"}));  // average distance 4

    WeightPolytope closure = ts::closure_w1_ge_w2();
    CHECK(nd_k_bruteforce(ex, closure, 1) == ts::set_of({"a", "e"}));
    CHECK(nd_k_bruteforce(ex, closure, 2) == ts::set_of({"a", "h", "e", "i", "d", "c"}));
    CHECK(nd_k_bruteforce(ex, polytope_from_epsilon(2, Spread::full()), 2) == skyband(ex, 2));
}

TEST_CASE("degenerate datasets") {
    Dataset same = make_dataset(2, {{"x", {1.0, 1.0}}, {"y", {1.0, 1.0}}, {"z", {1.0, 1.0}}});
    CHECK(skyline(same).size() == 3);  // no strict dominance anywhere

    Dataset chain = make_dataset(2, {{"p", {1.0, 1.0}}, {"q", {2.0, 2.0}}, {"r", {3.0, 3.0}}});
    CHECK(skyline(chain) == ts::set_of({"p"}));
    CHECK(skyband(chain, 2) == ts::set_of({"p", "q"}));
    CHECK(skyband(chain, 5) == ts::set_of({"p", "q", "r"}));  // k >= N keeps everything

    Dataset tie = make_dataset(2, {{"x", {1.0, 3.0}}, {"y", {3.0, 1.0}}, {"z", {4.0, 4.0}}});
    CHECK(top_k(tie, std::vector<double>{0.5, 0.5}, 1) == ts::set_of({"x", "y"}));  // rank tie
}

TEST_CASE("identity collapses on random instances") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        GenSpec spec{seed % 2 ? GenSpec::Dist::Uni : GenSpec::Dist::Ant, 60 + 10 * seed,
                     2 + seed % 3, seed};
        Dataset ds = generate(spec);
        for (std::size_t k : {std::size_t{1}, std::size_t{3}}) {
            CHECK(nd_k_bruteforce(ds, polytope_from_epsilon(ds.dim(), Spread::full()), k) ==
                  skyband(ds, k));
            std::vector<double> centroid(ds.dim(), 1.0 / static_cast<double>(ds.dim()));
            CHECK(nd_k_bruteforce(ds, polytope_from_epsilon(ds.dim(), Spread::none()), k) ==
                  top_k(ds, centroid, k));
        }
        CHECK(skyband(ds, 1) == skyline(ds));
    }
}

TEST_CASE("containment chain across spreads and k") {
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        Dataset ds = generate({GenSpec::Dist::Uni, 120, 2, seed});
        auto sky2 = skyband(ds, 2);
        for (Spread spread : {Spread::none(), Spread::of(0.1), Spread::full()}) {
            auto nd = nd_k_bruteforce(ds, polytope_from_epsilon(2, spread), 2);
            for (const auto& id : nd) CHECK(sky2.count(id) == 1);
        }
    }
}

TEST_CASE("replay oracle on the worked example") {
    Dataset ex = ts::ex9();
    WeightPolytope avg = polytope_from_epsilon(2, Spread::none());
    // depth 4 is where e becomes fully seen with score 4 < score(tau=(6,3)) = 4.5
    CHECK(min_stop_depth(ex, avg, 1, ex.attr_max()) == 4);
    WeightPolytope closure = ts::closure_w1_ge_w2();
    CHECK(min_stop_depth(ex, closure, 1, ex.attr_max()) == 4);
    // more dominators than tuples: never satisfiable, exhausts at N
    CHECK(min_stop_depth(ex, avg, 100, ex.attr_max()) == 9);
}

TEST_CASE("replay oracle agrees with the scalar-NRA reimplementation") {
    for (std::uint64_t seed = 3; seed < 11; ++seed) {
        Dataset ds = generate({seed % 2 ? GenSpec::Dist::Ant : GenSpec::Dist::Uni, 80, 2, seed});
        std::vector<double> centroid{0.5, 0.5};
        WeightPolytope w = polytope_from_epsilon(2, Spread::none());
        for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
            CHECK(min_stop_depth(ds, w, k, ds.attr_max()) ==
                  ts::scalar_nra_growing_depth(ds, centroid, k));
        }
    }
}

}  // TEST_SUITE
