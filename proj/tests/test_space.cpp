#include <doctest.h>

#include <memory>

#include "sgm/rng.hpp"
#include "sgm/space.hpp"

using namespace sgm;

namespace {

SemigroupPtr path_ptr(int n) {
    return std::make_shared<const PosetSemigroup>(path_semigroup(n));
}
SemigroupPtr product_ptr(int n, int k) {
    return std::make_shared<const PosetSemigroup>(product_capped(n, k));
}

Dist el(const PosetSemigroup& m, const std::string& label) {
    return Dist::element(*m.index_of(label));
}

}  // namespace

TEST_CASE("labelled graph basics") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a", "b", "c"});
    CHECK(*g.distance(0, 0) == Dist::zero());
    CHECK(!g.distance(0, 1));
    g.set_distance(0, 1, el(*m, "2"));
    CHECK(*g.distance(1, 0) == el(*m, "2"));
    CHECK(!g.complete());
    CHECK_THROWS_AS(g.set_distance(0, 0, el(*m, "1")), InputError);
    CHECK_THROWS_AS(g.set_distance(0, 1, Dist::zero()), InputError);
    CHECK_THROWS_AS(g.set_distance(0, 7, el(*m, "1")), InputError);
    CHECK_THROWS_AS(LabelledGraph(m, {"a", "a"}), InputError);
}

TEST_CASE("check_triangles flags the documented violation") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a", "b", "c"});
    g.set_distance(0, 1, el(*m, "3"));
    g.set_distance(0, 2, el(*m, "1"));
    g.set_distance(1, 2, el(*m, "1"));
    auto report = check_triangles(g);
    REQUIRE(report.violations.size() == 1);  // 3 is not below 1+1
    CHECK(report.violations[0].dab == el(*m, "3"));

    LabelledGraph two(m, {"a", "b"});
    two.set_distance(0, 1, el(*m, "3"));
    CHECK(check_triangles(two).ok());  // no triples

    // partially defined triples are skipped
    LabelledGraph part(m, {"a", "b", "c"});
    part.set_distance(0, 1, el(*m, "3"));
    part.set_distance(0, 2, el(*m, "1"));
    CHECK(check_triangles(part).ok());
}

TEST_CASE("completion fills a one-hole path by capped sum") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a", "b", "c"});
    g.set_distance(0, 2, el(*m, "1"));
    g.set_distance(2, 1, el(*m, "1"));
    auto r = complete_shortest_path(g);
    REQUIRE(r.ok());
    CHECK(r.space->distance(0, 1) == el(*m, "2"));
}

TEST_CASE("completion seeds isolated pairs with the maximum") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a", "b"});
    auto r = complete_shortest_path(g);
    REQUIRE(r.ok());
    CHECK(r.space->distance(0, 1) == el(*m, "3"));
}

TEST_CASE("completion reproduces the two-coordinate witness infimum") {
    auto m = product_ptr(3, 2);
    LabelledGraph g(m, {"a", "b", "c1", "c2"});
    g.set_distance(0, 2, el(*m, "(1,1)"));
    g.set_distance(1, 2, el(*m, "(1,2)"));
    g.set_distance(0, 3, el(*m, "(1,1)"));
    g.set_distance(1, 3, el(*m, "(2,1)"));
    auto r = complete_shortest_path(g);
    REQUIRE(r.ok());
    CHECK(r.space->distance(0, 1) == el(*m, "(2,2)"));
}

TEST_CASE("completion fails on an original-edge violation") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a", "b", "c", "x"});
    g.set_distance(0, 1, el(*m, "3"));
    g.set_distance(0, 2, el(*m, "1"));
    g.set_distance(1, 2, el(*m, "1"));
    auto r = complete_shortest_path(g);
    CHECK(!r.ok());
    CHECK(!r.failure.ok());
}

TEST_CASE("completion is idempotent") {
    auto m = product_ptr(3, 2);
    Rng rng(41);
    for (int run = 0; run < 50; ++run) {
        const int n = 2 + rng.below_int(5);
        LabelledGraph g(m, [&] {
            std::vector<std::string> labels;
            for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
            return labels;
        }());
        // sprinkle random defined edges; skip invalid seeds
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin()) g.set_distance(u, v, Dist::element(rng.below_int(m->size())));
        auto first = complete_shortest_path(g);
        if (!first.ok()) continue;
        CHECK(check_triangles(first.space->graph()).ok());
        auto second = complete_shortest_path(first.space->graph());
        REQUIRE(second.ok());
        CHECK(*second.space == *first.space);
    }
}

TEST_CASE("induced subspaces") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a", "b", "c"});
    g.set_distance(0, 1, el(*m, "2"));
    g.set_distance(0, 2, el(*m, "1"));
    g.set_distance(1, 2, el(*m, "1"));
    auto s = MetricSpace::from_graph(g);

    auto whole = induced(s, {0, 1, 2});
    CHECK(whole == s);
    auto point = induced(s, {1});
    CHECK(point.vertex_count() == 1);
    auto nested = induced(induced(s, {0, 1}), {1});
    CHECK(nested.vertices() == std::vector<std::string>{"b"});
    CHECK_THROWS_AS(induced(s, {0, 9}), InputError);
}

TEST_CASE("same_type_over") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"x", "p", "q", "r"});
    g.set_distance(0, 1, el(*m, "1"));  // d(x,p) = 1
    g.set_distance(0, 2, el(*m, "1"));  // d(x,q) = 1
    g.set_distance(0, 3, el(*m, "2"));  // d(x,r) = 2
    g.set_distance(1, 2, el(*m, "2"));
    g.set_distance(1, 3, el(*m, "1"));
    g.set_distance(2, 3, el(*m, "3"));
    auto s = MetricSpace::from_graph(g);

    CHECK(same_type_over(s, {1}, {1}, {0, 2}));      // identity map
    CHECK(same_type_over(s, {1}, {2}, {0}));         // p and q look alike from x
    CHECK(!same_type_over(s, {1}, {3}, {0}));        // p and r do not
    CHECK(!same_type_over(s, {1}, {2}, {0, 3}));     // r distinguishes them
    CHECK_THROWS_AS(same_type_over(s, {1}, {1, 2}, {}), InputError);
}

TEST_CASE("same_type_over is an equivalence in A for fixed X") {
    auto m = product_ptr(3, 2);
    Rng rng(99);
    LabelledGraph g(m, {"a", "b", "c", "d", "e"});
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) g.set_distance(u, v, Dist::element(8));  // all (3,3)
    g.set_distance(0, 1, Dist::element(0));
    g.set_distance(2, 3, Dist::element(0));
    auto s = MetricSpace::from_graph(g);

    for (int trial = 0; trial < 100; ++trial) {
        auto A = rng.sample_distinct(5, 2);
        auto B = rng.sample_distinct(5, 2);
        auto C = rng.sample_distinct(5, 2);
        auto X = rng.sample_distinct(5, rng.below_int(3));
        CHECK(same_type_over(s, A, A, X));  // reflexive
        if (same_type_over(s, A, B, X)) CHECK(same_type_over(s, B, A, X));
        if (same_type_over(s, A, B, X) && same_type_over(s, B, C, X))
            CHECK(same_type_over(s, A, C, X));
    }
}

TEST_CASE("amalgam over the empty base uses the maximum") {
    auto m = path_ptr(3);
    LabelledGraph g1(m, {"a"});
    LabelledGraph g2(m, {"b"});
    auto r = amalgam(MetricSpace::from_graph(g1), MetricSpace::from_graph(g2), {});
    REQUIRE(r.ok());
    CHECK(r.space->distance(0, 1) == el(*m, "3"));
}

TEST_CASE("amalgam over a point adds distances") {
    auto m = path_ptr(3);
    LabelledGraph g1(m, {"a", "c"});
    g1.set_distance(0, 1, el(*m, "1"));
    LabelledGraph g2(m, {"c", "b"});
    g2.set_distance(0, 1, el(*m, "1"));
    auto r = amalgam(MetricSpace::from_graph(g1), MetricSpace::from_graph(g2), {"c"});
    REQUIRE(r.ok());
    auto& s = *r.space;
    CHECK(s.distance(*s.vertex_index("a"), *s.vertex_index("b")) == el(*m, "2"));
}

TEST_CASE("amalgam realizes the two-midpoint configuration") {
    auto m = product_ptr(3, 2);
    LabelledGraph g1(m, {"a", "c1", "c2"});
    g1.set_distance(0, 1, el(*m, "(1,1)"));
    g1.set_distance(0, 2, el(*m, "(1,1)"));
    g1.set_distance(1, 2, el(*m, "(2,2)"));
    LabelledGraph g2(m, {"b", "c1", "c2"});
    g2.set_distance(0, 1, el(*m, "(1,2)"));
    g2.set_distance(0, 2, el(*m, "(2,1)"));
    g2.set_distance(1, 2, el(*m, "(2,2)"));
    auto r = amalgam(MetricSpace::from_graph(g1), MetricSpace::from_graph(g2), {"c1", "c2"});
    REQUIRE(r.ok());
    auto& s = *r.space;
    CHECK(s.distance(*s.vertex_index("a"), *s.vertex_index("b")) == el(*m, "(2,2)"));
    CHECK(check_triangles(s.graph()).ok());
}

TEST_CASE("amalgam embeds both factors and validates input") {
    auto m = path_ptr(4);
    Rng rng(7);
    for (int run = 0; run < 40; ++run) {
        // random valid base of size 2, random valid one-point extensions
        LabelledGraph base(m, {"c1", "c2"});
        base.set_distance(0, 1, Dist::element(rng.below_int(4)));
        auto bspace = MetricSpace::from_graph(base);

        auto extend = [&](const std::string& fresh) -> std::optional<MetricSpace> {
            LabelledGraph g(m, {fresh, "c1", "c2"});
            g.set_distance(1, 2, bspace.distance(0, 1));
            g.set_distance(0, 1, Dist::element(rng.below_int(4)));
            g.set_distance(0, 2, Dist::element(rng.below_int(4)));
            if (!check_triangles(g).ok()) return std::nullopt;
            return MetricSpace::from_graph(g);
        };
        auto s1 = extend("x"), s2 = extend("y");
        if (!s1 || !s2) continue;
        auto r = amalgam(*s1, *s2, {"c1", "c2"});
        if (!r.ok()) continue;  // a failing amalgam is a legitimate result
        auto& s = *r.space;
        CHECK(check_triangles(s.graph()).ok());
        // embedding: the restriction to either factor is that factor
        std::vector<Vertex> f1;
        for (const auto& label : s1->vertices()) f1.push_back(*s.vertex_index(label));
        CHECK(induced(s, f1) == *s1);
        std::vector<Vertex> f2;
        for (const auto& label : s2->vertices()) f2.push_back(*s.vertex_index(label));
        CHECK(induced(s, f2) == *s2);
    }

    // a missing base vertex and a non-base label collision are input errors
    LabelledGraph a(m, {"c", "x"});
    a.set_distance(0, 1, el(*m, "1"));
    LabelledGraph b2(m, {"c", "x"});
    b2.set_distance(0, 1, el(*m, "2"));
    CHECK_THROWS_AS(amalgam(MetricSpace::from_graph(a), MetricSpace::from_graph(b2), {"q"}),
                    InputError);
    CHECK_THROWS_AS(amalgam(MetricSpace::from_graph(a), MetricSpace::from_graph(b2), {"x"}),
                    InputError);
}

TEST_CASE("metric space construction rejects incomplete or invalid graphs") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a", "b"});
    CHECK_THROWS_AS(MetricSpace::from_graph(g), InputError);
    LabelledGraph bad(m, {"a", "b", "c"});
    bad.set_distance(0, 1, el(*m, "3"));
    bad.set_distance(0, 2, el(*m, "1"));
    bad.set_distance(1, 2, el(*m, "1"));
    CHECK_THROWS_AS(MetricSpace::from_graph(bad), InputError);
}
