#include <doctest.h>

#include <memory>

#include "sgm/json_io.hpp"
#include "sgm/rng.hpp"

using namespace sgm;
using nlohmann::json;

namespace {

SemigroupPtr product_ptr(int n, int k) {
    return std::make_shared<const PosetSemigroup>(product_capped(n, k));
}

}  // namespace

TEST_CASE("semigroup json round-trip") {
    for (const auto& m : {path_semigroup(4), product_capped(3, 2)}) {
        auto j = semigroup_to_json(m);
        auto back = semigroup_from_json(j);
        CHECK(back == m);
    }
    // malformed payloads are input errors
    CHECK_THROWS_AS(semigroup_from_json(json::parse("{\"elements\":[\"a\"]}")), InputError);
    CHECK_THROWS_AS(semigroup_from_json(json::parse("[]")), InputError);
}

TEST_CASE("space json round-trip keeps undefined cells and the diagonal") {
    auto m = product_ptr(3, 2);
    LabelledGraph g(m, {"a", "b", "c"});
    g.set_distance(0, 1, Dist::element(*m->index_of("(1,2)")));
    auto j = graph_to_json(g);
    CHECK(j["d"][0][0] == "0");
    CHECK(j["d"][0][2].is_null());
    auto back = graph_from_json(j);
    CHECK(back.vertices() == g.vertices());
    CHECK(*back.distance(0, 1) == *g.distance(0, 1));
    CHECK(!back.defined(0, 2));

    // zero off the diagonal and asymmetric entries are rejected
    auto bad = j;
    bad["d"][0][2] = "0";
    CHECK_THROWS_AS(graph_from_json(bad), InputError);
    bad = j;
    bad["d"][0][1] = "(2,1)";  // no longer matches d[1][0]
    CHECK_THROWS_AS(graph_from_json(bad), InputError);
    bad = j;
    bad["d"][0][1] = "(9,9)";
    CHECK_THROWS_AS(graph_from_json(bad), InputError);
}

TEST_CASE("family json forms") {
    auto f = family_from_json(json::parse(R"({"name":"cherlin_odd_perimeter","K1":2,"delta":3})"));
    CHECK(f.forbids("1", "1", "1"));
    auto g = family_from_json(json::parse(R"({"name":"custom","forbidden_triples":[[1,2,3]]})"));
    CHECK(g.forbids("3", "2", "1"));
    auto round = family_from_json(family_to_json(f));
    CHECK(round.forbids("1", "1", "1"));
    CHECK_THROWS_AS(family_from_json(json::parse("{}")), InputError);
}

TEST_CASE("report serializers emit the documented shapes") {
    ValidationReport vr;
    vr.passed = false;
    vr.violations.push_back({"absorption", {"a", "b"}});
    auto vj = validation_report_to_json(vr);
    CHECK(vj["passed"] == false);
    CHECK(vj["violations"][0]["axiom"] == "absorption");

    BoundResult br;
    br.max_len = 5;
    auto bj = bound_to_json(br);
    CHECK(bj["bound"].is_null());
    CHECK(bj["max_len"] == 5);
    br.bound = 3;
    CHECK(bound_to_json(br)["bound"] == 3);
}
