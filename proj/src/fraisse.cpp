#include "sgm/fraisse.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sgm/geodesic.hpp"
#include "sgm/independence.hpp"
#include "sgm/parallel.hpp"
#include "sgm/rng.hpp"

namespace sgm {

namespace {

std::array<std::string, 3> sorted_triple(std::string x, std::string y, std::string z) {
    std::array<std::string, 3> t{std::move(x), std::move(y), std::move(z)};
    std::sort(t.begin(), t.end());
    return t;
}

std::optional<int> parse_positive_int(const std::string& text) {
    if (text.empty() || text.size() > 9) return std::nullopt;
    int value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') return std::nullopt;
        value = value * 10 + (ch - '0');
    }
    if (value < 1) return std::nullopt;
    return value;
}

}  // namespace

TriangleFamily::TriangleFamily(std::string name,
                               std::vector<std::array<std::string, 3>> forbidden)
    : name_(std::move(name)) {
    for (auto& t : forbidden) forbidden_.push_back(sorted_triple(t[0], t[1], t[2]));
    std::sort(forbidden_.begin(), forbidden_.end());
    forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

TriangleFamily TriangleFamily::cherlin_odd_perimeter(int k1, int delta) {
    if (k1 < 1) throw InputError("cherlin_odd_perimeter: K1 must be >= 1");
    if (delta < 1) throw InputError("cherlin_odd_perimeter: delta must be >= 1");
    std::vector<std::array<std::string, 3>> triples;
    for (int x = 1; x <= delta; ++x)
        for (int y = x; y <= delta; ++y)
            for (int z = y; z <= delta; ++z) {
                int p = x + y + z;
                if (p % 2 == 1 && p < 2 * k1)
                    triples.push_back({std::to_string(x), std::to_string(y), std::to_string(z)});
            }
    TriangleFamily family("cherlin_odd_perimeter", std::move(triples));
    family.cherlin_ = std::make_pair(k1, delta);
    return family;
}

bool TriangleFamily::forbids(const std::string& x, const std::string& y,
                             const std::string& z) const {
    return std::binary_search(forbidden_.begin(), forbidden_.end(), sorted_triple(x, y, z));
}

void TriangleFamily::check_carrier(const PosetSemigroup& m) const {
    if (cherlin_) {
        for (const auto& label : m.elements()) {
            auto v = parse_positive_int(label);
            if (!v || *v > cherlin_->second)
                throw InputError("family '" + name_ + "': carrier label '" + label +
                                 "' is not an integer within diameter " +
                                 std::to_string(cherlin_->second));
        }
        return;
    }
    for (const auto& t : forbidden_)
        for (const auto& label : t)
            if (!m.index_of(label))
                throw InputError("family '" + name_ + "': label '" + label +
                                 "' is not a carrier element");
}

std::vector<ForbiddenTriple> check_forbidden(const MetricSpace& s, const TriangleFamily& family) {
    family.check_carrier(s.semigroup());
    std::vector<ForbiddenTriple> out;
    const int n = s.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                Dist ab = s.distance(a, b), ac = s.distance(a, c), bc = s.distance(b, c);
                const auto& la = s.semigroup().label(ab.index());
                const auto& lb = s.semigroup().label(ac.index());
                const auto& lc = s.semigroup().label(bc.index());
                if (family.forbids(la, lb, lc)) out.push_back({a, b, c, ab, ac, bc});
            }
    return out;
}

namespace {

// Distance matrices are handled as flat upper-triangle element-index vectors
// during enumeration; cheaper than full spaces.
struct FlatSpace {
    int n = 0;
    std::vector<int> cells;  // row-major upper triangle, size n*(n-1)/2

    int& at(int i, int j, std::vector<int>& c) const {
        return c[offset(i, j)];
    }
    int get(int i, int j) const { return cells[offset(i, j)]; }
    int offset(int i, int j) const {
        if (i > j) std::swap(i, j);
        return i * (2 * n - i - 1) / 2 + (j - i - 1);
    }
};

bool flat_triangles_ok(const PosetSemigroup& m, const FlatSpace& f) {
    for (int a = 0; a < f.n; ++a)
        for (int b = a + 1; b < f.n; ++b)
            for (int c = b + 1; c < f.n; ++c) {
                int ab = f.get(a, b), ac = f.get(a, c), bc = f.get(b, c);
                if (!m.le(ab, m.add(ac, bc)) || !m.le(ac, m.add(ab, bc)) ||
                    !m.le(bc, m.add(ab, ac)))
                    return false;
            }
    return true;
}

bool flat_family_ok(const PosetSemigroup& m, const FlatSpace& f,
                    const std::optional<TriangleFamily>& family) {
    if (!family) return true;
    for (int a = 0; a < f.n; ++a)
        for (int b = a + 1; b < f.n; ++b)
            for (int c = b + 1; c < f.n; ++c)
                if (family->forbids(m.label(f.get(a, b)), m.label(f.get(a, c)),
                                    m.label(f.get(b, c))))
                    return false;
    return true;
}

// canonical: lexicographically minimal flattening over vertex permutations
bool flat_is_canonical(const FlatSpace& f) {
    std::vector<int> perm(f.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> image(f.cells.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (int i = 0; i < f.n; ++i)
            for (int j = i + 1; j < f.n; ++j)
                image[f.offset(i, j)] = f.get(perm[i], perm[j]);
        if (image < f.cells) return false;
    }
    return true;
}

MetricSpace flat_to_space(const SemigroupPtr& m, const FlatSpace& f, const std::string& prefix) {
    std::vector<std::string> labels;
    for (int i = 0; i < f.n; ++i) labels.push_back(prefix + std::to_string(i));
    LabelledGraph g(m, std::move(labels));
    for (int i = 0; i < f.n; ++i)
        for (int j = i + 1; j < f.n; ++j) g.set_distance(i, j, Dist::element(f.get(i, j)));
    return MetricSpace::from_graph(std::move(g));
}

// all family-respecting metric spaces on n vertices, canonical representatives
std::vector<FlatSpace> enumerate_bases(const PosetSemigroup& m, int n,
                                       const std::optional<TriangleFamily>& family) {
    std::vector<FlatSpace> out;
    if (n == 0) {
        out.push_back(FlatSpace{0, {}});
        return out;
    }
    FlatSpace f;
    f.n = n;
    f.cells.assign(n * (n - 1) / 2, 0);
    const int cells = static_cast<int>(f.cells.size());
    bool more = true;
    while (more) {
        if (flat_triangles_ok(m, f) && flat_family_ok(m, f, family) && flat_is_canonical(f))
            out.push_back(f);
        int pos = cells - 1;
        while (pos >= 0 && f.cells[pos] == m.size() - 1) f.cells[pos--] = 0;
        if (pos < 0)
            more = false;
        else
            ++f.cells[pos];
    }
    if (n == 1) return out;  // single empty-cell case handled by the loop above
    return out;
}

// valid one-point extensions of the base: distance vectors to its vertices
std::vector<std::vector<int>> enumerate_extensions(const PosetSemigroup& m, const FlatSpace& base,
                                                   const std::optional<TriangleFamily>& family) {
    std::vector<std::vector<int>> out;
    if (base.n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> vec(base.n, 0);
    bool more = true;
    while (more) {
        bool ok = true;
        for (int i = 0; i < base.n && ok; ++i)
            for (int j = i + 1; j < base.n && ok; ++j) {
                int ij = base.get(i, j);
                if (!m.le(ij, m.add(vec[i], vec[j])) || !m.le(vec[i], m.add(ij, vec[j])) ||
                    !m.le(vec[j], m.add(ij, vec[i])))
                    ok = false;
                if (ok && family &&
                    family->forbids(m.label(ij), m.label(vec[i]), m.label(vec[j])))
                    ok = false;
            }
        if (ok) out.push_back(vec);
        int pos = base.n - 1;
        while (pos >= 0 && vec[pos] == m.size() - 1) vec[pos--] = 0;
        if (pos < 0)
            more = false;
        else
            ++vec[pos];
    }
    return out;
}

std::string short_id(const PosetSemigroup& m) {
    auto enc = canonical_encoding(m);
    std::uint64_t h = 1469598103934665603ULL;
    for (int v : enc) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b9ULL;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "m%d-%016llx", m.size(), static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

AmalgamationReport check_amalgamation(const SemigroupPtr& m, int base_bound,
                                      const std::optional<TriangleFamily>& family, int jobs) {
    if (base_bound < 0 || base_bound > 3)
        throw InputError("check_amalgamation: base bound must be between 0 and 3");
    auto top = maximum(*m);
    if (!top) throw InputError("check_amalgamation: semigroup has no maximum");
    if (family) family->check_carrier(*m);

    AmalgamationReport report;
    report.semigroup_name = short_id(*m);
    report.base_bound = base_bound;

    std::vector<FlatSpace> bases;
    for (int n = 0; n <= base_bound; ++n) {
        auto level = enumerate_bases(*m, n, family);
        bases.insert(bases.end(), level.begin(), level.end());
    }
    report.bases_checked = static_cast<long>(bases.size());

    struct BaseOutcome {
        std::optional<AmalgamationWitness> witness;
        long pairs = 0;
    };
    std::vector<BaseOutcome> outcomes(bases.size());

    parallel_for(static_cast<int>(bases.size()), jobs, [&](int bi) {
        const FlatSpace& base = bases[bi];
        auto extensions = enumerate_extensions(*m, base, family);
        BaseOutcome& res = outcomes[bi];
        for (std::size_t e1 = 0; e1 < extensions.size() && !res.witness; ++e1) {
            for (std::size_t e2 = e1; e2 < extensions.size() && !res.witness; ++e2) {
                ++res.pairs;
                const auto& u = extensions[e1];
                const auto& w = extensions[e2];
                std::string reason;

                std::vector<Dist> cand;
                for (int i = 0; i < base.n; ++i)
                    cand.push_back(m->add(Dist::element(u[i]), Dist::element(w[i])));
                Dist cross = Dist::zero();
                try {
                    cross = infimum_extended(*m, cand, "amalgamation");
                } catch (const InputError& e) {
                    reason = e.what();
                }
                if (reason.empty() && cross.is_zero())
                    reason = "cross distance has no carrier value";

                if (reason.empty()) {
                    // assemble base + x + y and check it
                    FlatSpace combined;
                    combined.n = base.n + 2;
                    combined.cells.assign(combined.n * (combined.n - 1) / 2, 0);
                    for (int i = 0; i < base.n; ++i)
                        for (int j = i + 1; j < base.n; ++j)
                            combined.cells[combined.offset(i, j)] = base.get(i, j);
                    for (int i = 0; i < base.n; ++i) {
                        combined.cells[combined.offset(i, base.n)] = u[i];
                        combined.cells[combined.offset(i, base.n + 1)] = w[i];
                    }
                    combined.cells[combined.offset(base.n, base.n + 1)] = cross.index();
                    if (!flat_triangles_ok(*m, combined))
                        reason = "amalgam violates a triangle inequality";
                    else if (!flat_family_ok(*m, combined, family))
                        reason = "amalgam contains a forbidden triangle";
                }

                if (!reason.empty())
                    res.witness = AmalgamationWitness{flat_to_space(m, base, "c"), u, w, reason};
            }
        }
    });

    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
        report.pairs_checked += outcomes[bi].pairs;
        if (!report.witness && outcomes[bi].witness) report.witness = std::move(outcomes[bi].witness);
    }
    report.passed = !report.witness.has_value();
    return report;
}

namespace {

// distance vector of a candidate extension type over a base subset
struct ExtensionType {
    std::vector<Vertex> base;
    std::vector<int> dist;
};

bool type_realized(const MetricSpace& s, const ExtensionType& type) {
    for (Vertex w = 0; w < s.vertex_count(); ++w) {
        if (std::find(type.base.begin(), type.base.end(), w) != type.base.end()) continue;
        bool match = true;
        for (std::size_t i = 0; i < type.base.size() && match; ++i)
            match = s.distance(w, type.base[i]) == Dist::element(type.dist[i]);
        if (match) return true;
    }
    return false;
}

bool extension_locally_valid(const MetricSpace& s, const ExtensionType& type,
                             const std::optional<TriangleFamily>& family) {
    const auto& m = s.semigroup();
    for (std::size_t i = 0; i < type.base.size(); ++i)
        for (std::size_t j = i + 1; j < type.base.size(); ++j) {
            Dist ij = s.distance(type.base[i], type.base[j]);
            Dist u = Dist::element(type.dist[i]), v = Dist::element(type.dist[j]);
            if (!m.le(ij, m.add(u, v)) || !m.le(u, m.add(ij, v)) || !m.le(v, m.add(ij, u)))
                return false;
            if (family && family->forbids(m.label(ij.index()), m.label(u.index()),
                                          m.label(v.index())))
                return false;
        }
    return true;
}

// adjoin a vertex realizing the type; distances outside the base via the
// shortest-path amalgam over the base
BuildResult adjoin(const MetricSpace& s, const ExtensionType& type, const std::string& label,
                   const std::optional<TriangleFamily>& family) {
    BuildResult result;
    const auto& m = s.semigroup();
    std::vector<std::string> labels = s.vertices();
    labels.push_back(label);
    LabelledGraph g(s.semigroup_ptr(), std::move(labels));
    for (int u = 0; u < s.vertex_count(); ++u)
        for (int v = u + 1; v < s.vertex_count(); ++v) g.set_distance(u, v, s.distance(u, v));
    const Vertex fresh = s.vertex_count();
    for (std::size_t i = 0; i < type.base.size(); ++i)
        g.set_distance(type.base[i], fresh, Dist::element(type.dist[i]));
    for (Vertex u = 0; u < s.vertex_count(); ++u) {
        if (std::find(type.base.begin(), type.base.end(), u) != type.base.end()) continue;
        std::vector<Dist> cand;
        for (std::size_t i = 0; i < type.base.size(); ++i)
            cand.push_back(m.add(Dist::element(type.dist[i]), s.distance(type.base[i], u)));
        Dist cross = Dist::zero();
        try {
            cross = infimum_extended(m, cand, "extension");
        } catch (const InputError& e) {
            result.failure = e.what();
            return result;
        }
        if (cross.is_zero()) {
            result.failure = "extension: cross distance has no carrier value";
            return result;
        }
        g.set_distance(u, fresh, cross);
    }

    TriangleReport tri;
    auto space = SpaceBuilder::try_build(std::move(g), tri);
    if (!space) {
        result.failure = "extension amalgam violates a triangle inequality";
        return result;
    }
    if (family) {
        auto bad = check_forbidden(*space, *family);
        if (!bad.empty()) {
            result.failure = "extension amalgam contains a forbidden triangle";
            return result;
        }
    }
    result.space = std::move(*space);
    return result;
}

std::vector<ExtensionType> unrealized_types(const MetricSpace& s, int max_base,
                                            const std::optional<TriangleFamily>& family) {
    std::vector<ExtensionType> out;
    const int n = s.vertex_count();
    const int m = s.semigroup().size();
    // subsets of size 1..max_base in (size, lex) order
    std::vector<std::vector<Vertex>> subsets;
    std::vector<Vertex> current;
    auto recurse = [&](auto&& self, int start, int want) -> void {
        if (static_cast<int>(current.size()) == want) {
            subsets.push_back(current);
            return;
        }
        for (int v = start; v < n; ++v) {
            current.push_back(v);
            self(self, v + 1, want);
            current.pop_back();
        }
    };
    for (int size = 1; size <= max_base && size <= n; ++size) recurse(recurse, 0, size);

    for (const auto& base : subsets) {
        std::vector<int> vec(base.size(), 0);
        bool more = true;
        while (more) {
            ExtensionType type{base, vec};
            if (extension_locally_valid(s, type, family) && !type_realized(s, type))
                out.push_back(type);
            int pos = static_cast<int>(vec.size()) - 1;
            while (pos >= 0 && vec[pos] == m - 1) vec[pos--] = 0;
            if (pos < 0)
                more = false;
            else
                ++vec[pos];
        }
    }
    return out;
}

}  // namespace

BuildResult build_generic(const SemigroupPtr& m, int rounds, int max_base, int max_vertices,
                          std::uint64_t seed, const std::optional<TriangleFamily>& family) {
    if (rounds < 1) throw InputError("build_generic: rounds must be >= 1");
    if (max_base < 1) throw InputError("build_generic: max_base must be >= 1");
    if (max_vertices < 1) throw InputError("build_generic: max_vertices must be >= 1");
    if (family) family->check_carrier(*m);

    BuildResult result;
    MetricSpace cur = MetricSpace::from_graph(LabelledGraph(m, {"v0"}));
    int next_label = 1;
    Rng rng(derive_seed(seed, 0xF5A1, 0));

    for (int round = 0; round < rounds; ++round) {
        if (cur.vertex_count() >= max_vertices) break;
        auto types = unrealized_types(cur, max_base, family);
        if (types.empty()) break;
        rng.shuffle(types);
        for (const auto& type : types) {
            if (cur.vertex_count() >= max_vertices) break;
            if (type_realized(cur, type)) continue;  // an earlier adjoin may cover it
            auto step = adjoin(cur, type, "v" + std::to_string(next_label), family);
            if (!step.ok()) {
                result.failure = step.failure;
                return result;
            }
            cur = std::move(*step.space);
            ++next_label;
        }
    }
    result.space = std::move(cur);
    return result;
}

BuildResult random_space(const SemigroupPtr& m, int n, std::uint64_t seed,
                         const std::optional<TriangleFamily>& family) {
    if (n < 1) throw InputError("random_space: n must be >= 1");
    if (family) family->check_carrier(*m);

    BuildResult result;
    MetricSpace cur = MetricSpace::from_graph(LabelledGraph(m, {"v0"}));
    Rng rng(derive_seed(seed, 0xA11E, 0));
    const int size = m->size();

    // anchor the new vertex on a random subset with random distances and let
    // the shortest-path amalgam place it relative to everything else
    for (int next = 1; next < n; ++next) {
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            ExtensionType type;
            int anchors = 1 + rng.below_int(std::min(3, cur.vertex_count()));
            type.base = rng.sample_distinct(cur.vertex_count(), anchors);
            std::sort(type.base.begin(), type.base.end());
            for (std::size_t i = 0; i < type.base.size(); ++i)
                type.dist.push_back(rng.below_int(size));
            if (!extension_locally_valid(cur, type, family)) continue;
            auto step = adjoin(cur, type, "v" + std::to_string(next), family);
            if (!step.ok()) continue;
            cur = std::move(*step.space);
            placed = true;
        }
        if (!placed) {
            result.failure = "random_space: no valid extension found within the retry budget";
            return result;
        }
    }
    result.space = std::move(cur);
    return result;
}

std::vector<MetricSpace> make_fragments(const FragmentSource& source) {
    if (!source.semigroup) throw InputError("make_fragments: null semigroup");
    if (source.spec.count < 1) throw InputError("make_fragments: count must be >= 1");
    std::vector<MetricSpace> out;
    for (int i = 0; i < source.spec.count; ++i) {
        bool generic = source.spec.mode == FragmentSpec::Mode::generic ||
                       (source.spec.mode == FragmentSpec::Mode::mixed && i % 2 == 0);
        std::uint64_t seed = derive_seed(source.spec.seed, 0xF7A6, static_cast<std::uint64_t>(i));
        BuildResult built =
            generic ? build_generic(source.semigroup, source.spec.rounds, source.spec.max_base,
                                    source.spec.max_vertices, seed)
                    : random_space(source.semigroup, source.spec.max_vertices, seed);
        if (!built.ok())
            throw FragmentBuildError("make_fragments: fragment " + std::to_string(i) +
                                     " failed: " + *built.failure);
        out.push_back(std::move(*built.space));
    }
    return out;
}

std::vector<ClassificationRow> classify_semigroups(int max_size, int base_bound, int jobs) {
    auto semigroups = enumerate_pocs(max_size);
    std::vector<ClassificationRow> rows(semigroups.size());

    parallel_for(static_cast<int>(semigroups.size()), jobs, [&](int i) {
        auto ptr = std::make_shared<const PosetSemigroup>(semigroups[i]);
        const PosetSemigroup& sg = *ptr;
        ClassificationRow row;

        auto enc = canonical_encoding(sg);
        std::string text;
        const int n = sg.size();
        for (int j = 0; j < n * n; ++j) text += std::to_string(enc[j]);
        text += "|";
        for (int j = n * n; j < 2 * n * n; ++j) text += std::to_string(enc[j]);
        row.encoding = text;
        row.elements = n;
        row.valid = true;
        row.archimedean = is_archimedean(sg).archimedean;
        auto top = maximum(sg);
        row.has_maximum = top.has_value();

        row.all_binary_infima = true;
        for (int a = 0; a < n && row.all_binary_infima; ++a)
            for (int b = 0; b < n && row.all_binary_infima; ++b)
                if (!infimum(sg, {a, b})) row.all_binary_infima = false;

        if (top) {
            row.amalgamation_pass = check_amalgamation(ptr, base_bound).passed;
            auto bound = compute_bound(sg, 2 * n);
            row.bound = bound.bound;
            SearchBudget budget;
            budget.max_vertices = 4;
            budget.trials = 300;
            budget.seed = 0;
            row.one_supported_in_budget = !find_unsupported_witness(ptr, 1, budget).has_value();
        }
        rows[i] = std::move(row);
    });
    return rows;
}

}  // namespace sgm
