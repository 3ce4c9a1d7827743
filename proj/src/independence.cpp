#include "sgm/independence.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "sgm/parallel.hpp"
#include "sgm/rng.hpp"

namespace sgm {

using nlohmann::json;

namespace {

void check_vertices(const MetricSpace& s, const std::vector<Vertex>& vs, const char* who) {
    for (Vertex v : vs)
        if (v < 0 || v >= s.vertex_count()) throw InputError(std::string(who) + ": unknown vertex");
}

std::vector<Dist> pair_candidates(const MetricSpace& s, Vertex a, const std::vector<Vertex>& C,
                                  Vertex b) {
    const auto& m = s.semigroup();
    std::vector<Dist> cand;
    cand.reserve(C.size());
    for (Vertex c : C) cand.push_back(m.add(s.distance(a, c), s.distance(c, b)));
    return cand;
}

bool pair_indep(const MetricSpace& s, Vertex a, const std::vector<Vertex>& C, Vertex b,
                RelationVariant variant) {
    const auto& m = s.semigroup();
    Dist d = s.distance(a, b);
    std::vector<Dist> cand = pair_candidates(s, a, C, b);
    if (variant == RelationVariant::lower_bound) {
        for (Dist x : cand)
            if (!m.le(d, x)) return false;
        return true;
    }
    Dist inf = infimum_extended(m, cand,
                                "indep(" + s.vertex_label(a) + "," + s.vertex_label(b) + ")");
    return inf == d;
}

}  // namespace

bool indep_variant(const MetricSpace& s, const std::vector<Vertex>& A,
                   const std::vector<Vertex>& C, const std::vector<Vertex>& B,
                   RelationVariant variant) {
    check_vertices(s, A, "indep");
    check_vertices(s, C, "indep");
    check_vertices(s, B, "indep");
    for (Vertex a : A)
        for (Vertex b : B)
            if (!pair_indep(s, a, C, b, variant)) return false;
    return true;
}

bool indep(const MetricSpace& s, const std::vector<Vertex>& A, const std::vector<Vertex>& C,
           const std::vector<Vertex>& B) {
    return indep_variant(s, A, C, B, RelationVariant::shortest_path);
}

std::vector<std::vector<Vertex>> support_sets(const MetricSpace& s, Vertex a,
                                              const std::vector<Vertex>& C, Vertex b, int k) {
    if (k < 0) throw InputError("support_sets: k must be >= 0");
    std::vector<Vertex> base = C;
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    if (base.size() > 20) throw InputError("support_sets: base too large");
    if (!indep(s, {a}, base, {b}))
        throw InputError("support_sets: query is not independent over the full base");

    const bool has_top = maximum(s.semigroup()).has_value();
    std::vector<std::vector<Vertex>> out;
    const std::uint32_t limit = 1u << base.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (static_cast<int>(__builtin_popcount(mask)) > k) continue;
        std::vector<Vertex> sub;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask & (1u << i)) sub.push_back(base[i]);
        if (sub.empty() && !has_top) continue;  // relation over the empty base is undefined
        if (indep(s, {a}, sub, {b})) out.push_back(std::move(sub));
    }
    return out;
}

namespace {

struct StarConfig {
    std::vector<int> to_a;  // d(a, c_i)
    std::vector<int> to_b;  // d(b, c_i)
};

// Builds the space a, b, c_1..c_k from the star distances (centre distances
// to a and b), filling d(a,b) with the infimum over the midpoints and the
// pairwise midpoint distances by shortest-path completion. Returns the
// witness when the query is independent over all midpoints but over no
// subset of size <= k.
std::optional<UnsupportedWitness> try_star_config(const SemigroupPtr& m, const StarConfig& cfg,
                                                  int k) {
    const auto& sg = *m;
    const int mid = static_cast<int>(cfg.to_a.size());
    std::vector<Dist> cand;
    for (int i = 0; i < mid; ++i)
        cand.push_back(sg.add(Dist::element(cfg.to_a[i]), Dist::element(cfg.to_b[i])));

    Dist w = Dist::zero();
    try {
        w = infimum_extended(sg, cand, "witness search");
    } catch (const InputError&) {
        return std::nullopt;
    }
    if (w.is_zero()) return std::nullopt;

    // the full set must be needed: no subset of size <= k gives the same value
    auto top = maximum(sg);
    const std::uint32_t limit = 1u << mid;
    for (std::uint32_t mask = 0; mask + 1 < limit; ++mask) {
        if (static_cast<int>(__builtin_popcount(mask)) > k) continue;
        std::vector<Dist> sub;
        for (int i = 0; i < mid; ++i)
            if (mask & (1u << i)) sub.push_back(cand[i]);
        if (sub.empty()) {
            if (top && Dist::element(*top) == w) return std::nullopt;
            continue;
        }
        try {
            if (infimum_extended(sg, sub, "witness search") == w) return std::nullopt;
        } catch (const InputError&) {
            // no infimum over this subset; it cannot support the query
        }
    }

    // triangle faces through a and b must be satisfiable
    for (int i = 0; i < mid; ++i) {
        Dist u = Dist::element(cfg.to_a[i]), v = Dist::element(cfg.to_b[i]);
        if (!sg.le(u, sg.add(w, v)) || !sg.le(v, sg.add(w, u))) return std::nullopt;
    }

    std::vector<std::string> labels{"a", "b"};
    for (int i = 0; i < mid; ++i) labels.push_back("c" + std::to_string(i + 1));
    LabelledGraph g(m, std::move(labels));
    g.set_distance(0, 1, w);
    for (int i = 0; i < mid; ++i) {
        g.set_distance(0, 2 + i, Dist::element(cfg.to_a[i]));
        g.set_distance(1, 2 + i, Dist::element(cfg.to_b[i]));
    }
    auto completed = complete_shortest_path(g);
    if (!completed.ok()) return std::nullopt;

    std::vector<Vertex> C;
    for (int i = 0; i < mid; ++i) C.push_back(2 + i);
    // paranoia: confirm on the final space
    if (!indep(*completed.space, {0}, C, {1})) return std::nullopt;
    if (!support_sets(*completed.space, 0, C, 1, k).empty()) return std::nullopt;
    return UnsupportedWitness{std::move(*completed.space), 0, 1, std::move(C)};
}

}  // namespace

std::optional<UnsupportedWitness> find_unsupported_witness(const SemigroupPtr& m, int k,
                                                           const SearchBudget& budget) {
    if (k < 1) throw InputError("find_unsupported_witness: k must be >= 1");
    if (budget.max_vertices < k + 3) return std::nullopt;  // needs a, b and k+1 midpoints
    const int size = m->size();

    // exhaustive sweep over star configurations small enough to enumerate
    {
        const int mid = k + 1;
        double combos = 1;
        for (int i = 0; i < 2 * mid; ++i) combos *= size;
        if (combos <= 2e6) {
            StarConfig cfg;
            cfg.to_a.assign(mid, 0);
            cfg.to_b.assign(mid, 0);
            std::vector<int> idx(2 * mid, 0);
            bool more = true;
            while (more) {
                for (int i = 0; i < mid; ++i) {
                    cfg.to_a[i] = idx[i];
                    cfg.to_b[i] = idx[mid + i];
                }
                if (auto w = try_star_config(m, cfg, k)) return w;
                int pos = 2 * mid - 1;
                while (pos >= 0 && idx[pos] == size - 1) idx[pos--] = 0;
                if (pos < 0)
                    more = false;
                else
                    ++idx[pos];
            }
        }
    }

    // randomized phase over larger stars
    for (int trial = 0; trial < budget.trials; ++trial) {
        Rng rng(derive_seed(budget.seed, 0x5741, static_cast<std::uint64_t>(trial)));
        int max_mid = budget.max_vertices - 2;
        if (max_mid < k + 1) break;
        int mid = k + 1 + rng.below_int(max_mid - k);
        StarConfig cfg;
        for (int i = 0; i < mid; ++i) {
            cfg.to_a.push_back(rng.below_int(size));
            cfg.to_b.push_back(rng.below_int(size));
        }
        if (auto w = try_star_config(m, cfg, k)) return w;
    }
    return std::nullopt;
}

bool AxiomReport::all_passed() const {
    for (const auto& a : axioms)
        if (!a.passed) return false;
    return true;
}

namespace {

json label_list(const MetricSpace& s, const std::vector<Vertex>& vs) {
    json out = json::array();
    for (Vertex v : vs) out.push_back(s.vertex_label(v));
    return out;
}

struct Sampler {
    const std::vector<MetricSpace>& fragments;
    const CheckOptions& opts;

    const MetricSpace& pick_fragment(Rng& rng, int& index) const {
        index = rng.below_int(static_cast<int>(fragments.size()));
        return fragments[index];
    }

    std::vector<Vertex> set_of(Rng& rng, const MetricSpace& s, int max_size,
                               bool allow_empty) const {
        int cap = std::min(max_size, s.vertex_count());
        int k = allow_empty ? rng.below_int(cap + 1) : 1 + rng.below_int(std::max(1, cap));
        return rng.sample_distinct(s.vertex_count(), k);
    }

    // A base likely to make a and b independent: empty when they sit at the
    // maximum distance, otherwise a singleton two-step witness when one
    // exists, padded with noise.
    std::vector<Vertex> biased_base(Rng& rng, const MetricSpace& s, Vertex a, Vertex b) const {
        const auto& m = s.semigroup();
        std::vector<Vertex> base;
        auto top = maximum(m);
        bool at_top = top && s.distance(a, b) == Dist::element(*top);
        if (!at_top) {
            std::vector<Vertex> hits;
            for (Vertex c = 0; c < s.vertex_count(); ++c)
                if (m.add(s.distance(a, c), s.distance(c, b)) == s.distance(a, b))
                    hits.push_back(c);
            if (!hits.empty()) base.push_back(hits[rng.below_int(static_cast<int>(hits.size()))]);
        }
        int extra = rng.below_int(std::min(3, s.vertex_count()));
        for (int v : rng.sample_distinct(s.vertex_count(), extra)) base.push_back(v);
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        return base;
    }
};

using TrialFn = std::function<std::optional<json>(Rng&, int)>;

AxiomResult run_axiom(const std::string& name, const CheckOptions& opts, const TrialFn& trial) {
    AxiomResult result;
    result.axiom = name;
    result.trials = opts.trials;
    result.seed = opts.seed;

    std::vector<std::optional<json>> hits(opts.trials);
    std::uint64_t stream = 0;
    for (char ch : name) stream = stream * 131 + static_cast<unsigned char>(ch);
    parallel_for(opts.trials, opts.jobs, [&](int t) {
        Rng rng(derive_seed(opts.seed, stream, static_cast<std::uint64_t>(t)));
        hits[t] = trial(rng, t);
    });
    for (int t = 0; t < opts.trials; ++t)
        if (hits[t]) {
            result.passed = false;
            result.counterexample = std::move(*hits[t]);
            (*result.counterexample)["trial"] = t;
            break;
        }
    return result;
}

std::vector<Vertex> set_union(std::vector<Vertex> a, const std::vector<Vertex>& b) {
    for (Vertex v : b) a.push_back(v);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

// Fresh copies of the tuple A over the base C, amalgamated with the induced
// space on C and B: the Existence construction. Returns nullopt plus a
// reason when the amalgam fails.
struct ExistenceOutcome {
    std::optional<MetricSpace> space;
    std::vector<Vertex> A_copy, C_out, B_out;
    std::string failure;
};

ExistenceOutcome existence_amalgam(const MetricSpace& s, const std::vector<Vertex>& A,
                                   const std::vector<Vertex>& C, const std::vector<Vertex>& B) {
    ExistenceOutcome out;

    // left factor: C plus fresh copies of A \ C; right factor: C plus B \ C
    std::vector<Vertex> left = C, right = C;
    std::vector<int> a_slot(A.size(), -1);  // position of each a in `left`
    for (std::size_t i = 0; i < A.size(); ++i) {
        auto it = std::find(C.begin(), C.end(), A[i]);
        if (it != C.end()) {
            a_slot[i] = static_cast<int>(it - C.begin());
        } else {
            auto dup = std::find(left.begin(), left.end(), A[i]);
            if (dup != left.end() && dup - left.begin() >= static_cast<long>(C.size())) {
                a_slot[i] = static_cast<int>(dup - left.begin());
            } else {
                a_slot[i] = static_cast<int>(left.size());
                left.push_back(A[i]);
            }
        }
    }
    for (Vertex b : B)
        if (std::find(right.begin(), right.end(), b) == right.end()) right.push_back(b);

    MetricSpace s_left = induced(s, left);
    MetricSpace s_right = induced(s, right);

    // rename the A-copies so the amalgam keeps them disjoint from everything
    std::vector<std::string> labels = s_left.vertices();
    for (std::size_t i = C.size(); i < labels.size(); ++i) {
        std::string fresh = labels[i] + "'";
        while (s.vertex_index(fresh)) fresh += "'";
        labels[i] = fresh;
    }
    LabelledGraph g(s.semigroup_ptr(), labels);
    for (int u = 0; u < s_left.vertex_count(); ++u)
        for (int v = u + 1; v < s_left.vertex_count(); ++v)
            g.set_distance(u, v, s_left.distance(u, v));
    MetricSpace renamed = MetricSpace::from_graph(std::move(g));

    std::vector<std::string> base_labels;
    for (Vertex c : C) base_labels.push_back(s.vertex_label(c));
    auto joined = amalgam(renamed, s_right, base_labels);
    if (!joined.ok()) {
        const auto& v = joined.failure.violations.front();
        out.failure = "amalgam violates triangle inequality on (" +
                      std::to_string(v.a) + "," + std::to_string(v.b) + "," +
                      std::to_string(v.c) + ")";
        return out;
    }

    const MetricSpace& res = *joined.space;
    for (std::size_t i = 0; i < A.size(); ++i)
        out.A_copy.push_back(*res.vertex_index(labels[a_slot[i]]));
    for (Vertex c : C) out.C_out.push_back(*res.vertex_index(s.vertex_label(c)));
    for (Vertex b : B) out.B_out.push_back(*res.vertex_index(s.vertex_label(b)));
    out.space = std::move(*joined.space);
    return out;
}

}  // namespace

AxiomReport check_sir_axioms(const FragmentSource& source, const CheckOptions& opts) {
    std::vector<MetricSpace> fragments = make_fragments(source);
    if (fragments.empty()) throw InputError("check_sir_axioms: no fragments");
    Sampler sampler{fragments, opts};
    const RelationVariant var = opts.relation;
    auto rel = [var](const MetricSpace& s, const std::vector<Vertex>& A,
                     const std::vector<Vertex>& C, const std::vector<Vertex>& B) {
        return indep_variant(s, A, C, B, var);
    };

    AxiomReport report;

    report.axioms.push_back(run_axiom("invariance", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        auto C = sampler.set_of(rng, f, opts.max_c, true);
        bool r1 = rel(f, A, C, B);

        // the same configuration living in a reshuffled induced copy
        std::vector<Vertex> universe = set_union(set_union(A, B), C);
        std::vector<Vertex> shuffled = universe;
        rng.shuffle(shuffled);
        MetricSpace copy = induced(f, shuffled);
        auto remap = [&](const std::vector<Vertex>& vs) {
            std::vector<Vertex> out;
            for (Vertex v : vs) out.push_back(*copy.vertex_index(f.vertex_label(v)));
            return out;
        };
        bool r2 = rel(copy, remap(A), remap(C), remap(B));
        if (r1 == r2) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                    {"B", label_list(f, B)}, {"original", r1}, {"relabelled", r2}};
    }));

    report.axioms.push_back(run_axiom("symmetry", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        auto C = sampler.set_of(rng, f, opts.max_c, true);
        if (rel(f, A, C, B) == rel(f, B, C, A)) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                    {"B", label_list(f, B)}};
    }));

    report.axioms.push_back(run_axiom("monotonicity", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        auto D = sampler.set_of(rng, f, 2, true);
        std::vector<Vertex> C;
        if (A.size() == 1 && B.size() == 1 && rng.coin())
            C = sampler.biased_base(rng, f, A[0], B[0]);
        else
            C = sampler.set_of(rng, f, opts.max_c, true);
        if (!rel(f, A, C, set_union(B, D))) return std::nullopt;
        bool c1 = rel(f, A, C, B);
        bool c2 = rel(f, A, set_union(B, C), D);
        if (c1 && c2) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                    {"B", label_list(f, B)}, {"D", label_list(f, D)},
                    {"independent_from_B", c1}, {"independent_from_D_over_BC", c2}};
    }));

    report.axioms.push_back(run_axiom("existence", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        auto C = sampler.set_of(rng, f, opts.max_c, true);
        try {
            auto outcome = existence_amalgam(f, A, C, B);
            if (!outcome.space) {
                return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                            {"B", label_list(f, B)}, {"failure", outcome.failure}};
            }
            if (rel(*outcome.space, outcome.A_copy, outcome.C_out, outcome.B_out))
                return std::nullopt;
            return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                        {"B", label_list(f, B)},
                        {"failure", "amalgam copy is not independent from B over C"}};
        } catch (const InputError& e) {
            // an unresolvable infimum during amalgamation counts against
            // Existence, it is not a usage problem
            return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                        {"B", label_list(f, B)}, {"failure", e.what()}};
        }
    }));

    report.axioms.push_back(run_axiom("transitivity", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        auto B2 = sampler.set_of(rng, f, opts.max_b, false);
        std::vector<Vertex> C;
        if (A.size() == 1 && B.size() == 1 && rng.coin())
            C = sampler.biased_base(rng, f, A[0], B[0]);
        else
            C = sampler.set_of(rng, f, opts.max_c, true);
        if (!rel(f, A, C, B)) return std::nullopt;
        if (!rel(f, A, set_union(B, C), B2)) return std::nullopt;
        if (rel(f, A, C, B2)) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                    {"B", label_list(f, B)}, {"B'", label_list(f, B2)}};
    }));

    report.axioms.push_back(run_axiom("stationarity", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        int arity = 1 + rng.below_int(std::min(2, opts.max_a));
        auto A = rng.sample_distinct(f.vertex_count(), arity);
        if (A.empty()) return std::nullopt;
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        std::vector<Vertex> C;
        if (B.size() == 1 && rng.coin())
            C = sampler.biased_base(rng, f, A[0], B[0]);
        else
            C = sampler.set_of(rng, f, opts.max_c, true);
        if (!rel(f, A, C, B)) return std::nullopt;

        std::vector<Vertex> BC = set_union(B, C);
        // all realizations of tp(A/C) inside the fragment that are also
        // independent from B over C must have the same type over B and C
        const int n = f.vertex_count();
        std::vector<Vertex> tuple(A.size(), 0);
        long total = 1;
        for (std::size_t i = 0; i < A.size(); ++i) total *= n;
        for (long code = 0; code < total; ++code) {
            long rest = code;
            bool distinct = true;
            for (std::size_t i = 0; i < A.size(); ++i) {
                tuple[i] = static_cast<Vertex>(rest % n);
                rest /= n;
            }
            for (std::size_t i = 0; i < A.size() && distinct; ++i)
                for (std::size_t j = i + 1; j < A.size() && distinct; ++j)
                    if (tuple[i] == tuple[j]) distinct = false;
            if (!distinct) continue;
            if (!same_type_over(f, A, tuple, C)) continue;
            if (!rel(f, tuple, C, B)) continue;
            if (!same_type_over(f, A, tuple, BC)) {
                return json{{"fragment", fi}, {"A", label_list(f, A)},
                            {"A'", label_list(f, tuple)}, {"C", label_list(f, C)},
                            {"B", label_list(f, B)}};
            }
        }
        return std::nullopt;
    }));

    report.axioms.push_back(run_axiom("base_extension", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        std::vector<Vertex> C;
        if (A.size() == 1 && B.size() == 1 && rng.coin())
            C = sampler.biased_base(rng, f, A[0], B[0]);
        else
            C = sampler.set_of(rng, f, opts.max_c, true);
        if (!rel(f, A, C, B)) return std::nullopt;
        if (rel(f, A, C, set_union(B, C))) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                    {"B", label_list(f, B)}};
    }));

    report.axioms.push_back(run_axiom("joint_from_pairwise", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, 1, false);
        auto X = sampler.set_of(rng, f, opts.max_c, false);
        for (Vertex x : X)
            if (!rel(f, A, {}, {x})) return std::nullopt;
        if (rel(f, A, {}, X)) return std::nullopt;
        return json{{"fragment", fi}, {"a", label_list(f, A)}, {"X", label_list(f, X)}};
    }));

    return report;
}

AxiomReport check_metric_like(const FragmentSource& source, const CheckOptions& opts) {
    std::vector<MetricSpace> fragments = make_fragments(source);
    if (fragments.empty()) throw InputError("check_metric_like: no fragments");
    Sampler sampler{fragments, opts};
    const RelationVariant var = opts.relation;
    auto rel = [var](const MetricSpace& s, const std::vector<Vertex>& A,
                     const std::vector<Vertex>& C, const std::vector<Vertex>& B) {
        return indep_variant(s, A, C, B, var);
    };

    AxiomReport report;

    report.axioms.push_back(run_axiom("self_dependence", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        if (f.vertex_count() < 2) return std::nullopt;
        Vertex a = rng.below_int(f.vertex_count());
        std::vector<Vertex> A;
        for (Vertex v : sampler.set_of(rng, f, opts.max_c, false))
            if (v != a) A.push_back(v);
        if (A.empty()) return std::nullopt;
        if (!rel(f, {a}, A, {a})) return std::nullopt;
        return json{{"fragment", fi}, {"a", f.vertex_label(a)}, {"A", label_list(f, A)}};
    }));

    report.axioms.push_back(run_axiom("dependent_pair_exists", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        Vertex a = rng.below_int(f.vertex_count());
        for (Vertex b = 0; b < f.vertex_count(); ++b)
            if (b != a && !rel(f, {a}, {}, {b})) return std::nullopt;
        // adjoin a witness at a non-maximal distance when the fragment lacks one
        const auto& m = f.semigroup();
        auto top = maximum(m);
        for (int t = 0; t < m.size(); ++t) {
            if (top && t == *top) continue;
            std::vector<std::string> labels = f.vertices();
            labels.push_back("w?");
            LabelledGraph g(f.semigroup_ptr(), std::move(labels));
            for (int u = 0; u < f.vertex_count(); ++u)
                for (int v = u + 1; v < f.vertex_count(); ++v)
                    g.set_distance(u, v, f.distance(u, v));
            const Vertex fresh = f.vertex_count();
            g.set_distance(a, fresh, Dist::element(t));
            for (int u = 0; u < f.vertex_count(); ++u)
                if (u != a)
                    g.set_distance(u, fresh, m.add(f.distance(u, a), Dist::element(t)));
            TriangleReport tri;
            auto ext = SpaceBuilder::try_build(std::move(g), tri);
            if (!ext) continue;
            if (!rel(*ext, {a}, {}, {fresh})) return std::nullopt;
        }
        return json{{"fragment", fi}, {"a", f.vertex_label(a)},
                    {"failure", "every vertex and every one-point extension is independent of a over the empty set"}};
    }));

    report.axioms.push_back(run_axiom("perfect_triviality", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        std::vector<Vertex> C;
        if (A.size() == 1 && B.size() == 1 && rng.coin())
            C = sampler.biased_base(rng, f, A[0], B[0]);
        else
            C = sampler.set_of(rng, f, opts.max_c, true);
        auto C2 = set_union(C, sampler.set_of(rng, f, 2, true));
        if (!rel(f, A, C, B)) return std::nullopt;
        if (rel(f, A, C2, B)) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C", label_list(f, C)},
                    {"C'", label_list(f, C2)}, {"B", label_list(f, B)}};
    }));

    return report;
}

AxiomReport check_derived(const FragmentSource& source, const CheckOptions& opts) {
    std::vector<MetricSpace> fragments = make_fragments(source);
    if (fragments.empty()) throw InputError("check_derived: no fragments");
    Sampler sampler{fragments, opts};
    const RelationVariant var = opts.relation;
    auto rel = [var](const MetricSpace& s, const std::vector<Vertex>& A,
                     const std::vector<Vertex>& C, const std::vector<Vertex>& B) {
        return indep_variant(s, A, C, B, var);
    };

    AxiomReport report;

    report.axioms.push_back(run_axiom("metricity", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, false);
        auto C1 = sampler.set_of(rng, f, 2, true);
        auto C2 = sampler.set_of(rng, f, 2, true);
        auto D = sampler.set_of(rng, f, 2, true);
        if (!rel(f, A, set_union(C1, C2), B)) return std::nullopt;
        if (!rel(f, C1, D, B)) return std::nullopt;
        if (rel(f, A, set_union(C2, D), B)) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"C1", label_list(f, C1)},
                    {"C2", label_list(f, C2)}, {"D", label_list(f, D)},
                    {"B", label_list(f, B)}};
    }));

    report.axioms.push_back(run_axiom("triviality", opts, [&](Rng& rng, int) -> std::optional<json> {
        int fi;
        const MetricSpace& f = sampler.pick_fragment(rng, fi);
        auto A = sampler.set_of(rng, f, opts.max_a, false);
        auto B = sampler.set_of(rng, f, opts.max_b, true);
        auto C = sampler.set_of(rng, f, opts.max_b, false);
        auto D = sampler.set_of(rng, f, opts.max_b, false);
        if (!rel(f, A, B, C)) return std::nullopt;
        if (!rel(f, A, B, D)) return std::nullopt;
        if (rel(f, A, B, set_union(C, D))) return std::nullopt;
        return json{{"fragment", fi}, {"A", label_list(f, A)}, {"B", label_list(f, B)},
                    {"C", label_list(f, C)}, {"D", label_list(f, D)}};
    }));

    return report;
}

}  // namespace sgm
