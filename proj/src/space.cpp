#include "sgm/space.hpp"

#include <algorithm>
#include <set>

namespace sgm {

LabelledGraph::LabelledGraph(SemigroupPtr semigroup, std::vector<std::string> vertices)
    : semigroup_(std::move(semigroup)), vertices_(std::move(vertices)) {
    if (!semigroup_) throw InputError("space: null semigroup");
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
        if (v.empty()) throw InputError("space: empty vertex label");
        if (!seen.insert(v).second) throw InputError("space: duplicate vertex label '" + v + "'");
    }
    cells_.assign(vertices_.size() * vertices_.size(), kUndefined);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        cells_[i * vertices_.size() + i] = kZero;
}

void LabelledGraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= vertex_count()) throw InputError("space: vertex index out of range");
}

std::optional<Vertex> LabelledGraph::vertex_index(const std::string& label) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices_[i] == label) return i;
    return std::nullopt;
}

std::optional<Dist> LabelledGraph::distance(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    int cell = at(u, v);
    if (cell == kUndefined) return std::nullopt;
    if (cell == kZero) return Dist::zero();
    return Dist::element(cell);
}

void LabelledGraph::set_distance(Vertex u, Vertex v, Dist d) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        if (!d.is_zero()) throw InputError("space: diagonal distance must be zero");
        return;
    }
    if (d.is_zero()) throw InputError("space: off-diagonal distance cannot be zero");
    if (d.index() >= semigroup_->size()) throw InputError("space: distance index out of range");
    cells_[static_cast<std::size_t>(u) * vertices_.size() + v] = d.index();
    cells_[static_cast<std::size_t>(v) * vertices_.size() + u] = d.index();
}

bool LabelledGraph::complete() const {
    for (int u = 0; u < vertex_count(); ++u)
        for (int v = u + 1; v < vertex_count(); ++v)
            if (!defined(u, v)) return false;
    return true;
}

TriangleReport check_triangles(const LabelledGraph& g) {
    TriangleReport report;
    const auto& m = g.semigroup();
    const int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                if (!g.defined(a, b) || !g.defined(a, c) || !g.defined(b, c)) continue;
                Dist ab = *g.distance(a, b), ac = *g.distance(a, c), bc = *g.distance(b, c);
                bool ok = m.le(ab, m.add(ac, bc)) && m.le(ac, m.add(ab, bc)) &&
                          m.le(bc, m.add(ab, ac));
                if (!ok) report.violations.push_back({a, b, c, ab, ac, bc});
            }
    return report;
}

MetricSpace MetricSpace::from_graph(LabelledGraph g) {
    if (!g.complete()) throw InputError("metric space: distance map is not total");
    TriangleReport report = check_triangles(g);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw InputError("metric space: triangle inequality fails on (" + g.vertex_label(v.a) +
                         "," + g.vertex_label(v.b) + "," + g.vertex_label(v.c) + ")");
    }
    return MetricSpace(std::move(g));
}

bool operator==(const MetricSpace& a, const MetricSpace& b) {
    if (!(a.semigroup() == b.semigroup())) return false;
    if (a.vertices() != b.vertices()) return false;
    for (int u = 0; u < a.vertex_count(); ++u)
        for (int v = u + 1; v < a.vertex_count(); ++v)
            if (a.distance(u, v) != b.distance(u, v)) return false;
    return true;
}

std::optional<MetricSpace> SpaceBuilder::try_build(LabelledGraph g, TriangleReport& report) {
    if (!g.complete()) throw InputError("metric space: distance map is not total");
    report = check_triangles(g);
    if (!report.ok()) return std::nullopt;
    return MetricSpace(std::move(g));
}

Dist infimum_extended(const PosetSemigroup& m, const std::vector<Dist>& candidates,
                      const std::string& context) {
    if (candidates.empty()) {
        auto top = maximum(m);
        if (!top) throw InputError(context + ": infimum of empty set needs a maximum");
        return Dist::element(*top);
    }
    std::vector<int> carrier;
    for (Dist d : candidates) {
        if (d.is_zero()) return Dist::zero();
        carrier.push_back(d.index());
    }
    auto glb = infimum(m, carrier);
    if (glb) return Dist::element(*glb);
    // distinguish "no carrier lower bound" (zero is the infimum) from
    // genuinely incomparable lower bounds (no infimum at all)
    for (int x = 0; x < m.size(); ++x) {
        bool lb = true;
        for (int y : carrier)
            if (!m.le(x, y)) {
                lb = false;
                break;
            }
        if (lb) throw InputError(context + ": candidate set has no infimum");
    }
    return Dist::zero();
}

CompletionResult complete_shortest_path(const LabelledGraph& g) {
    CompletionResult result;
    const auto& m = g.semigroup();
    const int n = g.vertex_count();

    auto top = maximum(m);
    LabelledGraph work = g;
    std::vector<std::pair<Vertex, Vertex>> holes;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!work.defined(u, v)) holes.emplace_back(u, v);

    if (!holes.empty()) {
        if (!top) {
            result.infimum_error = "completion requires a maximum to seed undefined entries";
            return result;
        }
        for (auto [u, v] : holes) work.set_distance(u, v, Dist::element(*top));
    }

    // relax only the originally-undefined cells, to a fixpoint
    bool changed = !holes.empty();
    while (changed) {
        changed = false;
        for (auto [u, v] : holes) {
            std::vector<Dist> cand;
            cand.reserve(n);
            for (int c = 0; c < n; ++c)
                cand.push_back(m.add(*work.distance(u, c), *work.distance(c, v)));
            Dist best = Dist::zero();
            try {
                best = infimum_extended(m, cand, "completion");
            } catch (const InputError& e) {
                result.infimum_error = e.what();
                return result;
            }
            if (best.is_zero()) {
                // no carrier value works for a distinct pair
                result.infimum_error = "completion: infimum of two-step paths fell to zero for (" +
                                       work.vertex_label(u) + "," + work.vertex_label(v) + ")";
                return result;
            }
            if (best != *work.distance(u, v)) {
                work.set_distance(u, v, best);
                changed = true;
            }
        }
    }

    TriangleReport report;
    auto space = SpaceBuilder::try_build(std::move(work), report);
    if (!space) {
        result.failure = std::move(report);
        return result;
    }
    result.space = std::move(space);
    return result;
}

MetricSpace induced(const MetricSpace& s, const std::vector<Vertex>& subset) {
    std::vector<std::string> labels;
    labels.reserve(subset.size());
    for (Vertex v : subset) {
        if (v < 0 || v >= s.vertex_count()) throw InputError("induced: unknown vertex");
        labels.push_back(s.vertex_label(v));
    }
    LabelledGraph g(s.semigroup_ptr(), std::move(labels));
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            g.set_distance(static_cast<Vertex>(i), static_cast<Vertex>(j),
                           s.distance(subset[i], subset[j]));
    return MetricSpace::from_graph(std::move(g));
}

bool same_type_over(const MetricSpace& s, const std::vector<Vertex>& A,
                    const std::vector<Vertex>& B, const std::vector<Vertex>& X) {
    if (A.size() != B.size()) throw InputError("same_type_over: tuple length mismatch");
    auto check = [&](Vertex v) {
        if (v < 0 || v >= s.vertex_count()) throw InputError("same_type_over: unknown vertex");
    };
    for (Vertex v : A) check(v);
    for (Vertex v : B) check(v);
    for (Vertex v : X) check(v);

    // the candidate map: A_i -> B_i, x -> x
    std::vector<Vertex> from, to;
    for (std::size_t i = 0; i < A.size(); ++i) {
        from.push_back(A[i]);
        to.push_back(B[i]);
    }
    for (Vertex x : X) {
        from.push_back(x);
        to.push_back(x);
    }
    // well-defined: equal sources must have equal images
    for (std::size_t i = 0; i < from.size(); ++i)
        for (std::size_t j = i + 1; j < from.size(); ++j)
            if (from[i] == from[j] && to[i] != to[j]) return false;
    // distance-preserving (collisions are caught because d(u,v) != 0 for
    // distinct u,v while d(w,w) = 0)
    for (std::size_t i = 0; i < from.size(); ++i)
        for (std::size_t j = 0; j < from.size(); ++j)
            if (s.distance(from[i], from[j]) != s.distance(to[i], to[j])) return false;
    return true;
}

AmalgamResult amalgam(const MetricSpace& s1, const MetricSpace& s2,
                      const std::vector<std::string>& base) {
    AmalgamResult result;
    if (!(s1.semigroup() == s2.semigroup()))
        throw InputError("amalgam: factors live over different semigroups");

    std::vector<Vertex> base1, base2;
    for (const auto& label : base) {
        auto u = s1.vertex_index(label), v = s2.vertex_index(label);
        if (!u || !v) throw InputError("amalgam: base vertex '" + label + "' missing from a factor");
        base1.push_back(*u);
        base2.push_back(*v);
    }
    std::set<std::string> base_set(base.begin(), base.end());
    if (base_set.size() != base.size()) throw InputError("amalgam: duplicate base vertex");

    // factors must agree on the base
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = i + 1; j < base.size(); ++j)
            if (s1.distance(base1[i], base1[j]) != s2.distance(base2[i], base2[j]))
                throw InputError("amalgam: factors disagree on the base");

    // non-base labels must not collide (strong amalgamation keeps them apart)
    for (const auto& label : s1.vertices())
        if (!base_set.count(label) && s2.vertex_index(label))
            throw InputError("amalgam: non-base vertex '" + label + "' appears in both factors");

    std::vector<std::string> labels = s1.vertices();
    std::vector<Vertex> side2;  // s2 vertex -> combined index
    side2.assign(s2.vertex_count(), -1);
    // base vertices of s2 map to their s1 positions
    for (std::size_t i = 0; i < base.size(); ++i) side2[base2[i]] = base1[i];
    for (int v = 0; v < s2.vertex_count(); ++v)
        if (side2[v] < 0) {
            side2[v] = static_cast<int>(labels.size());
            labels.push_back(s2.vertex_label(v));
        }

    LabelledGraph g(s1.semigroup_ptr(), std::move(labels));
    for (int u = 0; u < s1.vertex_count(); ++u)
        for (int v = u + 1; v < s1.vertex_count(); ++v)
            g.set_distance(u, v, s1.distance(u, v));
    for (int u = 0; u < s2.vertex_count(); ++u)
        for (int v = u + 1; v < s2.vertex_count(); ++v)
            if (side2[u] != side2[v]) g.set_distance(side2[u], side2[v], s2.distance(u, v));

    const auto& m = s1.semigroup();
    for (int u = 0; u < s1.vertex_count(); ++u) {
        if (std::find(base1.begin(), base1.end(), u) != base1.end()) continue;
        for (int v = 0; v < s2.vertex_count(); ++v) {
            if (std::find(base2.begin(), base2.end(), v) != base2.end()) continue;
            std::vector<Dist> cand;
            for (std::size_t i = 0; i < base.size(); ++i)
                cand.push_back(m.add(s1.distance(u, base1[i]), s2.distance(v, base2[i])));
            Dist cross = infimum_extended(m, cand, "amalgam");
            if (cross.is_zero())
                throw InputError("amalgam: cross distance fell to zero for (" +
                                 s1.vertex_label(u) + "," + s2.vertex_label(v) + ")");
            g.set_distance(u, side2[v], cross);
        }
    }

    TriangleReport report;
    auto space = SpaceBuilder::try_build(std::move(g), report);
    if (!space) {
        result.failure = std::move(report);
        return result;
    }
    result.space = std::move(space);
    return result;
}

}  // namespace sgm
