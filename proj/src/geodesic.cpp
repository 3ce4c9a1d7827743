#include "sgm/geodesic.hpp"

#include <algorithm>
#include <set>

#include "sgm/independence.hpp"

namespace sgm {

StepProfile GeodesicSequence::profile() const {
    StepProfile p;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        p.push_back(space.distance(seq[i], seq[i + 1]).index());
    return p;
}

GeodesicCheck is_geodesic(const MetricSpace& s, const std::vector<Vertex>& seq) {
    std::set<Vertex> distinct;
    for (Vertex v : seq) {
        if (v < 0 || v >= s.vertex_count()) throw InputError("is_geodesic: unknown vertex");
        if (!distinct.insert(v).second) throw InputError("is_geodesic: duplicate vertex");
    }
    const int n = static_cast<int>(seq.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (!indep(s, {seq[i]}, {seq[j]}, {seq[k]}))
                    return {false, std::array<Vertex, 3>{seq[i], seq[j], seq[k]}};
    return {true, std::nullopt};
}

Dist fold_steps(const PosetSemigroup& m, const StepProfile& steps) {
    Dist acc = Dist::zero();
    for (int s : steps) acc = m.add(acc, Dist::element(s));
    return acc;
}

namespace {

std::string fresh_label(const MetricSpace& s, const std::string& prefix) {
    for (int i = 0;; ++i) {
        std::string candidate = prefix + std::to_string(i);
        if (!s.vertex_index(candidate)) return candidate;
    }
}

void check_step(const PosetSemigroup& m, int t, const char* who) {
    if (t < 0 || t >= m.size()) throw InputError(std::string(who) + ": step index out of range");
}

}  // namespace

GeodesicSequence extend_geodesic(const GeodesicSequence& g, int t) {
    const auto& m = g.space.semigroup();
    check_step(m, t, "extend_geodesic");
    if (g.seq.empty()) throw InputError("extend_geodesic: empty sequence");

    Vertex last = g.seq.back();
    std::vector<std::string> labels = g.space.vertices();
    labels.push_back(fresh_label(g.space, "g"));
    const Vertex fresh = static_cast<Vertex>(labels.size()) - 1;

    LabelledGraph graph(g.space.semigroup_ptr(), std::move(labels));
    for (int u = 0; u < g.space.vertex_count(); ++u)
        for (int v = u + 1; v < g.space.vertex_count(); ++v)
            graph.set_distance(u, v, g.space.distance(u, v));
    // one-point amalgam over the last sequence vertex
    graph.set_distance(last, fresh, Dist::element(t));
    for (int u = 0; u < g.space.vertex_count(); ++u) {
        if (u == last) continue;
        graph.set_distance(u, fresh, m.add(g.space.distance(u, last), Dist::element(t)));
    }

    TriangleReport report;
    auto space = SpaceBuilder::try_build(std::move(graph), report);
    if (!space) throw InputError("extend_geodesic: amalgam violates a triangle inequality");

    GeodesicSequence out{std::move(*space), g.seq};
    out.seq.push_back(fresh);
    return out;
}

ProfileResult geodesic_with_profile(const SemigroupPtr& m, const StepProfile& p,
                                    const std::string& label_prefix) {
    if (p.empty()) throw InputError("geodesic_with_profile: empty profile");
    for (int s : p) check_step(*m, s, "geodesic_with_profile");

    const int n = static_cast<int>(p.size()) + 1;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(label_prefix + std::to_string(i));

    LabelledGraph graph(m, std::move(labels));
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            StepProfile window(p.begin() + i, p.begin() + k);
            graph.set_distance(i, k, fold_steps(*m, window));
        }

    ProfileResult result;
    TriangleReport report;
    auto space = SpaceBuilder::try_build(std::move(graph), report);
    if (!space) {
        result.failure = std::move(report);
        return result;
    }
    GeodesicSequence g{std::move(*space), {}};
    for (int i = 0; i < n; ++i) g.seq.push_back(i);
    result.geodesic = std::move(g);
    return result;
}

ConcatResult concat_geodesics(const GeodesicSequence& g1, const GeodesicSequence& g2,
                              const std::string& pivot) {
    if (g1.seq.empty() || g2.seq.empty()) throw InputError("concat_geodesics: empty sequence");
    if (g1.space.vertex_label(g1.seq.back()) != pivot)
        throw InputError("concat_geodesics: pivot is not the last vertex of the first sequence");
    if (!(g1.space.semigroup() == g2.space.semigroup()))
        throw InputError("concat_geodesics: sequences live over different semigroups");

    // rename the head of g2 to the pivot, keep everything else
    std::vector<std::string> labels2 = g2.space.vertices();
    const std::string head = g2.space.vertex_label(g2.seq.front());
    for (auto& label : labels2)
        if (label == head) label = pivot;
    for (const auto& label : labels2)
        if (label != pivot && g1.space.vertex_index(label))
            throw InputError("concat_geodesics: vertex label '" + label + "' collides");

    LabelledGraph graph2(g2.space.semigroup_ptr(), labels2);
    for (int u = 0; u < g2.space.vertex_count(); ++u)
        for (int v = u + 1; v < g2.space.vertex_count(); ++v)
            graph2.set_distance(u, v, g2.space.distance(u, v));
    MetricSpace renamed = MetricSpace::from_graph(std::move(graph2));

    auto joined = amalgam(g1.space, renamed, {pivot});
    ConcatResult result;
    if (!joined.ok()) {
        result.failure = std::move(joined.failure);
        return result;
    }

    GeodesicSequence out{std::move(*joined.space), {}};
    for (Vertex v : g1.seq) out.seq.push_back(*out.space.vertex_index(g1.space.vertex_label(v)));
    for (std::size_t i = 1; i < g2.seq.size(); ++i)
        out.seq.push_back(*out.space.vertex_index(labels2[g2.seq[i]]));
    result.geodesic = std::move(out);
    return result;
}

BoundResult compute_bound(const PosetSemigroup& m, int max_len) {
    if (max_len < 1) throw InputError("compute_bound: max_len must be >= 1");
    auto top = maximum(m);
    if (!top) throw InputError("compute_bound: semigroup has no maximum");

    BoundResult result;
    result.max_len = max_len;

    // frontier = set of values realizable as folds of exactly k elements
    std::vector<char> frontier(m.size(), 0);
    for (int a = 0; a < m.size(); ++a) frontier[a] = 1;
    for (int k = 1; k <= max_len; ++k) {
        bool all_top = true;
        for (int a = 0; a < m.size() && all_top; ++a)
            if (frontier[a] && a != *top) all_top = false;
        if (all_top) {
            result.bound = k;
            return result;
        }
        std::vector<char> next(m.size(), 0);
        for (int a = 0; a < m.size(); ++a)
            if (frontier[a])
                for (int b = 0; b < m.size(); ++b) next[m.add(a, b)] = 1;
        frontier = std::move(next);
    }
    return result;
}

std::vector<int> almost_free_elements(const PosetSemigroup& m) {
    auto top = maximum(m);
    if (!top) throw InputError("almost_free_elements: semigroup has no maximum");
    std::vector<int> out;
    for (int a = 0; a < m.size(); ++a) {
        if (a == *top) continue;
        bool all = true;
        for (int b = 0; b < m.size() && all; ++b)
            if (m.add(a, b) != *top) all = false;
        if (all) out.push_back(a);
    }
    return out;
}

}  // namespace sgm
