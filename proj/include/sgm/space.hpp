#ifndef SGM_SPACE_HPP
#define SGM_SPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sgm/semigroup.hpp"

namespace sgm {

using Vertex = int;

// Symmetric partial distance map into the carrier, zero exactly on the
// diagonal. Off-diagonal entries may be undefined until completion.
class LabelledGraph {
public:
    LabelledGraph(SemigroupPtr semigroup, std::vector<std::string> vertices);

    const PosetSemigroup& semigroup() const { return *semigroup_; }
    const SemigroupPtr& semigroup_ptr() const { return semigroup_; }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::string& vertex_label(Vertex v) const { return vertices_.at(v); }
    std::optional<Vertex> vertex_index(const std::string& label) const;

    bool defined(Vertex u, Vertex v) const { return at(u, v) != kUndefined; }
    std::optional<Dist> distance(Vertex u, Vertex v) const;
    // Off-diagonal entries must be carrier elements; the diagonal stays zero.
    void set_distance(Vertex u, Vertex v, Dist d);

    bool complete() const;

private:
    static constexpr int kUndefined = -2;
    static constexpr int kZero = -1;

    int at(Vertex u, Vertex v) const { return cells_[static_cast<std::size_t>(u) * vertices_.size() + v]; }
    void check_vertex(Vertex v) const;

    SemigroupPtr semigroup_;
    std::vector<std::string> vertices_;
    std::vector<int> cells_;
};

struct TriangleViolation {
    Vertex a, b, c;
    Dist dab, dac, dbc;
};

struct TriangleReport {
    std::vector<TriangleViolation> violations;  // one entry per bad triple
    bool ok() const { return violations.empty(); }
};

// Every fully-defined triple violating some orientation of
// d(x,y) <= d(x,z) (+) d(z,y). Partial graphs allowed.
TriangleReport check_triangles(const LabelledGraph& g);

// A complete labelled graph satisfying every triangle inequality. The only
// constructors validate, so holding a MetricSpace is a proof of validity.
class MetricSpace {
public:
    // Throws InputError when the graph is incomplete or violates a triangle
    // inequality (external inputs are expected to be well-formed).
    static MetricSpace from_graph(LabelledGraph g);

    const LabelledGraph& graph() const { return graph_; }
    const PosetSemigroup& semigroup() const { return graph_.semigroup(); }
    const SemigroupPtr& semigroup_ptr() const { return graph_.semigroup_ptr(); }
    int vertex_count() const { return graph_.vertex_count(); }
    const std::vector<std::string>& vertices() const { return graph_.vertices(); }
    const std::string& vertex_label(Vertex v) const { return graph_.vertex_label(v); }
    std::optional<Vertex> vertex_index(const std::string& label) const {
        return graph_.vertex_index(label);
    }

    Dist distance(Vertex u, Vertex v) const { return *graph_.distance(u, v); }

    friend bool operator==(const MetricSpace& a, const MetricSpace& b);

private:
    friend class SpaceBuilder;
    explicit MetricSpace(LabelledGraph g) : graph_(std::move(g)) {}
    LabelledGraph graph_;
};

// Internal constructor for operations whose failure is a result, not an
// exception.
class SpaceBuilder {
public:
    // nullopt plus a report when some triangle inequality fails.
    static std::optional<MetricSpace> try_build(LabelledGraph g, TriangleReport& report);
};

struct CompletionResult {
    std::optional<MetricSpace> space;
    // Violations among the originally-defined edges when completion fails.
    TriangleReport failure;
    // Set instead when some required infimum does not exist.
    std::optional<std::string> infimum_error;
    bool ok() const { return space.has_value(); }
};

// Fills undefined entries by iterated relaxation: undefined cells are seeded
// with the maximum and repeatedly replaced by the infimum of all two-step
// paths until a fixpoint. Originally-defined entries are never changed; if
// they end up violating a triangle inequality the result is a failure report.
CompletionResult complete_shortest_path(const LabelledGraph& g);

// Restriction to the given vertices, which keep their order.
MetricSpace induced(const MetricSpace& s, const std::vector<Vertex>& subset);

// True iff mapping tuple A to tuple B pointwise while fixing X pointwise is a
// distance-preserving bijection between the induced substructures on A union X
// and B union X.
bool same_type_over(const MetricSpace& s, const std::vector<Vertex>& A,
                    const std::vector<Vertex>& B, const std::vector<Vertex>& X);

struct AmalgamResult {
    std::optional<MetricSpace> space;
    TriangleReport failure;  // meaningful negative result, not a crash
    bool ok() const { return space.has_value(); }
};

// Strong amalgam of s1 and s2 over the shared base (matched by vertex label):
// both sides are kept disjoint outside the base and cross distances are the
// infimum of two-step paths through the base (the maximum when the base is
// empty). Triangle failure of the result is reported as a value.
AmalgamResult amalgam(const MetricSpace& s1, const MetricSpace& s2,
                      const std::vector<std::string>& base);

// Infimum of a candidate set of distances in the carrier extended by the zero
// symbol as minimum: empty set yields the maximum, a set containing zero
// yields zero, and a carrier set without any carrier lower bound yields zero.
// Throws InputError when lower bounds exist but have no greatest element, or
// when the set is empty and the semigroup has no maximum.
Dist infimum_extended(const PosetSemigroup& m, const std::vector<Dist>& candidates,
                      const std::string& context);

}  // namespace sgm

#endif
