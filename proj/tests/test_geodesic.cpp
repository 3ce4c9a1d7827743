#include <doctest.h>

#include <algorithm>
#include <memory>

#include "sgm/geodesic.hpp"
#include "sgm/independence.hpp"
#include "sgm/rng.hpp"

using namespace sgm;

namespace {

SemigroupPtr path_ptr(int n) {
    return std::make_shared<const PosetSemigroup>(path_semigroup(n));
}
SemigroupPtr product_ptr(int n, int k) {
    return std::make_shared<const PosetSemigroup>(product_capped(n, k));
}

// brute force: does every fold of exactly k elements hit the maximum?
bool every_fold_is_max(const PosetSemigroup& m, int k) {
    int top = *maximum(m);
    std::vector<int> tuple(k, 0);
    while (true) {
        int acc = tuple[0];
        for (int i = 1; i < k; ++i) acc = m.add(acc, tuple[i]);
        if (acc != top) return false;
        int pos = k - 1;
        while (pos >= 0 && tuple[pos] == m.size() - 1) tuple[pos--] = 0;
        if (pos < 0) return true;
        ++tuple[pos];
    }
}

// fold law checked directly from the step profile
void check_fold_law(const GeodesicSequence& g) {
    const auto& m = g.space.semigroup();
    auto p = g.profile();
    for (std::size_t i = 0; i < g.seq.size(); ++i)
        for (std::size_t k = i + 1; k < g.seq.size(); ++k) {
            StepProfile window(p.begin() + i, p.begin() + k);
            CHECK(g.space.distance(g.seq[i], g.seq[k]) == fold_steps(m, window));
        }
}

}  // namespace

TEST_CASE("is_geodesic on chain spacings") {
    auto m = path_ptr(3);
    LabelledGraph g(m, {"a1", "a2", "a3", "a4"});
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            g.set_distance(i, j, Dist::element(std::min(3, j - i) - 1));
    auto s = MetricSpace::from_graph(g);
    CHECK(is_geodesic(s, {0, 1, 2, 3}).ok);
    CHECK(is_geodesic(s, {0, 1}).ok);  // no triples

    LabelledGraph h(m, {"a", "b", "c"});
    h.set_distance(0, 1, Dist::element(0));
    h.set_distance(1, 2, Dist::element(0));
    h.set_distance(0, 2, Dist::element(0));  // 1 != 1 (+) 1
    auto t = MetricSpace::from_graph(h);
    auto check = is_geodesic(t, {0, 1, 2});
    CHECK(!check.ok);
    REQUIRE(check.violation.has_value());
    CHECK((*check.violation)[0] == 0);

    CHECK_THROWS_AS(is_geodesic(s, {0, 0, 1}), InputError);
}

TEST_CASE("geodesic_with_profile realizes folds") {
    auto m = path_ptr(3);
    auto r = geodesic_with_profile(m, {0, 0, 0});  // steps 1,1,1
    REQUIRE(r.ok());
    const auto& g = *r.geodesic;
    CHECK(g.space.distance(g.seq.front(), g.seq.back()) == Dist::element(2));  // capped at 3
    CHECK(indep(g.space, {g.seq.front()}, {}, {g.seq.back()}));
    CHECK(is_geodesic(g.space, g.seq).ok);
    check_fold_law(g);
}

TEST_CASE("profile of length one gives the two-point space") {
    auto m = path_ptr(3);
    auto r = geodesic_with_profile(m, {1});
    REQUIRE(r.ok());
    CHECK(r.geodesic->space.vertex_count() == 2);
    CHECK(r.geodesic->space.distance(0, 1) == Dist::element(1));
}

TEST_CASE("short profiles leave endpoints dependent") {
    auto m = path_ptr(3);
    auto r = geodesic_with_profile(m, {0, 0});
    REQUIRE(r.ok());
    const auto& g = *r.geodesic;
    CHECK(g.space.distance(g.seq.front(), g.seq.back()) == Dist::element(1));  // 2 of 3
    CHECK(!indep(g.space, {g.seq.front()}, {}, {g.seq.back()}));
}

TEST_CASE("extend_geodesic grows by one-point amalgams") {
    auto m = path_ptr(3);
    auto start = geodesic_with_profile(m, {0});
    REQUIRE(start.ok());
    auto g2 = extend_geodesic(*start.geodesic, 0);
    CHECK(g2.seq.size() == 3);
    CHECK(g2.space.distance(g2.seq[0], g2.seq[2]) == Dist::element(1));  // 1+1
    CHECK(is_geodesic(g2.space, g2.seq).ok);

    auto p = product_ptr(3, 2);
    auto one = *p->index_of("(1,1)");
    auto seq = geodesic_with_profile(p, {one});
    REQUIRE(seq.ok());
    auto cur = *seq.geodesic;
    cur = extend_geodesic(cur, one);
    cur = extend_geodesic(cur, one);
    CHECK(cur.space.distance(cur.seq.front(), cur.seq.back()) ==
          Dist::element(*p->index_of("(3,3)")));
    CHECK(is_geodesic(cur.space, cur.seq).ok);
    check_fold_law(cur);
}

TEST_CASE("concat_geodesics joins at the pivot") {
    auto m = path_ptr(3);
    auto left = geodesic_with_profile(m, {0}, "a");
    auto right = geodesic_with_profile(m, {0}, "b");
    REQUIRE(left.ok());
    REQUIRE(right.ok());
    auto joined = concat_geodesics(*left.geodesic, *right.geodesic, "a1");
    REQUIRE(joined.ok());
    const auto& g = *joined.geodesic;
    CHECK(g.seq.size() == 3);
    CHECK(g.space.distance(g.seq.front(), g.seq.back()) == Dist::element(1));
    CHECK(is_geodesic(g.space, g.seq).ok);

    auto left2 = geodesic_with_profile(m, {0, 0}, "a");
    auto joined2 = concat_geodesics(*left2.geodesic, *right.geodesic, "a2");
    REQUIRE(joined2.ok());
    const auto& g2 = *joined2.geodesic;
    CHECK(g2.space.distance(g2.seq.front(), g2.seq.back()) == Dist::element(2));

    auto p = product_ptr(3, 2);
    auto pl = geodesic_with_profile(p, {*p->index_of("(1,2)")}, "x");
    auto pr = geodesic_with_profile(p, {*p->index_of("(2,1)")}, "y");
    auto pj = concat_geodesics(*pl.geodesic, *pr.geodesic, "x1");
    REQUIRE(pj.ok());
    CHECK(pj.geodesic->space.distance(pj.geodesic->seq.front(), pj.geodesic->seq.back()) ==
          Dist::element(*p->index_of("(3,3)")));

    CHECK_THROWS_AS(concat_geodesics(*left.geodesic, *right.geodesic, "a0"), InputError);
}

TEST_CASE("reversal of a geodesic sequence is a geodesic sequence") {
    auto p = product_ptr(3, 2);
    Rng rng(4);
    for (int trial = 0; trial < 60; ++trial) {
        StepProfile profile;
        int len = 1 + rng.below_int(4);
        for (int i = 0; i < len; ++i) profile.push_back(rng.below_int(p->size()));
        auto r = geodesic_with_profile(p, profile);
        REQUIRE(r.ok());
        auto seq = r.geodesic->seq;
        std::reverse(seq.begin(), seq.end());
        CHECK(is_geodesic(r.geodesic->space, seq).ok);
    }
}

TEST_CASE("compute_bound equals n on chains") {
    for (int n = 2; n <= 6; ++n) {
        auto r = compute_bound(path_semigroup(n), n + 2);
        REQUIRE(r.bound.has_value());
        CHECK(*r.bound == n);
    }
    auto one = compute_bound(path_semigroup(1), 3);
    REQUIRE(one.bound.has_value());
    CHECK(*one.bound == 1);
}

TEST_CASE("compute_bound matches the brute-force fold census") {
    std::vector<PosetSemigroup> sample{path_semigroup(2), path_semigroup(3), path_semigroup(4),
                                       product_capped(3, 2)};
    for (const auto& m : sample) {
        auto r = compute_bound(m, 2 * m.size());
        REQUIRE(r.bound.has_value());
        const int k = *r.bound;
        CHECK(every_fold_is_max(m, k));
        if (k > 1) CHECK(!every_fold_is_max(m, k - 1));
    }
    // the product bound is the cap, witnessed by all-(1,1) profiles
    auto p = compute_bound(product_capped(3, 2), 10);
    REQUIRE(p.bound.has_value());
    CHECK(*p.bound == 3);
}

TEST_CASE("compute_bound respects max_len and requires a maximum") {
    auto r = compute_bound(path_semigroup(4), 2);
    CHECK(!r.bound.has_value());
    CHECK(r.max_len == 2);

    // join semilattice on a chain: idempotent, bounded never kicks in
    SemigroupData d;
    d.elements = {"lo", "hi"};
    d.op = {{0, 1}, {1, 1}};
    d.leq = {{1, 1}, {0, 1}};
    auto m = PosetSemigroup::from_data(d);
    auto s = compute_bound(m, 64);
    CHECK(!s.bound.has_value());
}

TEST_CASE("profiles are realizable exactly as the bound predicts") {
    // for small carriers, every profile of length = bound yields independent
    // endpoints, and some shorter profile does not
    for (const auto& m : enumerate_pocs(3)) {
        if (!is_archimedean(m).archimedean) continue;
        auto ptr = std::make_shared<const PosetSemigroup>(m);
        auto r = compute_bound(m, 2 * m.size());
        REQUIRE(r.bound.has_value());
        int top = *maximum(m);
        const int k = *r.bound;
        // enumerate all profiles of length k
        std::vector<int> tuple(k, 0);
        bool done = false;
        while (!done) {
            auto g = geodesic_with_profile(ptr, tuple);
            REQUIRE(g.ok());
            CHECK(is_geodesic(g.geodesic->space, g.geodesic->seq).ok);
            CHECK(g.geodesic->space.distance(g.geodesic->seq.front(), g.geodesic->seq.back()) ==
                  Dist::element(top));
            int pos = k - 1;
            while (pos >= 0 && tuple[pos] == m.size() - 1) tuple[pos--] = 0;
            if (pos < 0)
                done = true;
            else
                ++tuple[pos];
        }
    }
}

TEST_CASE("almost-free elements on chains and products") {
    for (int n = 2; n <= 6; ++n) {
        auto m = path_semigroup(n);
        auto af = almost_free_elements(m);
        REQUIRE(af.size() == 1);
        CHECK(m.label(af[0]) == std::to_string(n - 1));
    }

    // brute-force oracle over all nine elements of the product
    auto p = product_capped(3, 2);
    int top = *maximum(p);
    std::vector<int> expected;
    for (int a = 0; a < p.size(); ++a) {
        if (a == top) continue;
        bool all = true;
        for (int b = 0; b < p.size(); ++b)
            if (p.add(a, b) != top) all = false;
        if (all) expected.push_back(a);
    }
    CHECK(almost_free_elements(p) == expected);
    // explicitly: both coordinates must be >= 2
    std::vector<std::string> labels;
    for (int a : expected) labels.push_back(p.label(a));
    CHECK(labels == std::vector<std::string>{"(2,2)", "(2,3)", "(3,2)"});

    CHECK(almost_free_elements(path_semigroup(1)).empty());
}

TEST_CASE("almost-free elements exist for archimedean carriers") {
    for (const auto& m : enumerate_pocs(3)) {
        if (!is_archimedean(m).archimedean || m.size() < 2) continue;
        CHECK(!almost_free_elements(m).empty());
    }
}

TEST_CASE("almost-freeness is exactly the distance-level independence transfer") {
    // if d(a,b) is almost free then any c independent from a over b sits at
    // the maximum distance from a
    auto ptr = product_ptr(3, 2);
    const auto& p = *ptr;
    auto af = almost_free_elements(p);
    int top = *maximum(p);
    for (int mval : af) {
        for (int ell = 0; ell < p.size(); ++ell) {
            LabelledGraph g(ptr, {"a", "b", "c"});
            g.set_distance(0, 1, Dist::element(mval));
            g.set_distance(1, 2, Dist::element(ell));
            g.set_distance(0, 2, Dist::element(p.add(mval, ell)));
            auto s = MetricSpace::from_graph(g);
            CHECK(indep(s, {0}, {1}, {2}));
            CHECK(s.distance(0, 2) == Dist::element(top));
            CHECK(indep(s, {0}, {}, {2}));
        }
    }
}

TEST_CASE("random constructions always satisfy the fold law") {
    std::vector<SemigroupPtr> carriers{path_ptr(3), path_ptr(5), product_ptr(3, 2)};
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& m = carriers[trial % carriers.size()];
        StepProfile profile;
        int len = 1 + rng.below_int(4);
        for (int i = 0; i < len; ++i) profile.push_back(rng.below_int(m->size()));
        auto r = geodesic_with_profile(m, profile);
        REQUIRE(r.ok());
        auto g = *r.geodesic;
        int extensions = rng.below_int(3);
        for (int i = 0; i < extensions; ++i) g = extend_geodesic(g, rng.below_int(m->size()));
        CHECK(is_geodesic(g.space, g.seq).ok);
        check_fold_law(g);
    }
}
