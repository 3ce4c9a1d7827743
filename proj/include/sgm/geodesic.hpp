#ifndef SGM_GEODESIC_HPP
#define SGM_GEODESIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "sgm/space.hpp"

namespace sgm {

// Ordered list of consecutive step distances (carrier indices). Nonempty.
using StepProfile = std::vector<int>;

// A vertex sequence in which every earlier vertex is independent from every
// later vertex over any intermediate one; equivalently, distances along the
// sequence are folds of the consecutive steps.
struct GeodesicSequence {
    MetricSpace space;
    std::vector<Vertex> seq;

    StepProfile profile() const;
};

struct GeodesicCheck {
    bool ok = true;
    // First (i, j, k) position triple breaking midpoint independence.
    std::optional<std::array<Vertex, 3>> violation;
};

// Vertices must be distinct and present.
GeodesicCheck is_geodesic(const MetricSpace& s, const std::vector<Vertex>& seq);

// Fold of the steps in order, starting from the zero symbol.
Dist fold_steps(const PosetSemigroup& m, const StepProfile& steps);

// Adjoins a fresh vertex at distance t from the last sequence vertex;
// remaining distances come from the one-point amalgam over that vertex.
// Fresh labels are drawn from "g0", "g1", ...
GeodesicSequence extend_geodesic(const GeodesicSequence& g, int t);

struct ProfileResult {
    std::optional<GeodesicSequence> geodesic;
    TriangleReport failure;  // profile not realizable as a metric space
    bool ok() const { return geodesic.has_value(); }
};

// The abstract space on |p|+1 vertices whose distances are the folds of p
// over subranges. label_prefix names the synthetic vertices.
ProfileResult geodesic_with_profile(const SemigroupPtr& m, const StepProfile& p,
                                    const std::string& label_prefix = "g");

struct ConcatResult {
    std::optional<GeodesicSequence> geodesic;
    TriangleReport failure;
    bool ok() const { return geodesic.has_value(); }
};

// Joins g2 onto g1 at the pivot (the last vertex of g1; the first vertex of
// g2 is identified with it) by amalgamating the two spaces over that single
// vertex. Other labels must not collide.
ConcatResult concat_geodesics(const GeodesicSequence& g1, const GeodesicSequence& g2,
                              const std::string& pivot);

struct BoundResult {
    std::optional<int> bound;  // absent: exceeds max_len
    int max_len = 0;
};

// Smallest k such that every fold of k carrier elements is the maximum; the
// endpoints of every geodesic of that length are then at the maximum
// distance, hence independent over the empty set. Computed by breadth-first
// closure over reachable fold values per length. Requires a maximum.
BoundResult compute_bound(const PosetSemigroup& m, int max_len);

// Non-maximal elements whose sum with every carrier element is the maximum.
// Requires a maximum.
std::vector<int> almost_free_elements(const PosetSemigroup& m);

}  // namespace sgm

#endif
