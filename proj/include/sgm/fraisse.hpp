#ifndef SGM_FRAISSE_HPP
#define SGM_FRAISSE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgm/fragments.hpp"
#include "sgm/space.hpp"

namespace sgm {

// Symmetric predicate over distance triples, stored as an explicit set of
// sorted label triples.
class TriangleFamily {
public:
    TriangleFamily(std::string name, std::vector<std::array<std::string, 3>> forbidden);

    // Forbids triangles of odd perimeter below 2*k1 over the carrier
    // {"1", ..., "delta"}.
    static TriangleFamily cherlin_odd_perimeter(int k1, int delta);

    const std::string& name() const { return name_; }
    const std::vector<std::array<std::string, 3>>& forbidden_triples() const { return forbidden_; }

    bool forbids(const std::string& x, const std::string& y, const std::string& z) const;

    // Every family label must name a carrier element; the built-in family
    // additionally requires every carrier label to be an integer within its
    // diameter. InputError otherwise.
    void check_carrier(const PosetSemigroup& m) const;

    std::optional<std::pair<int, int>> cherlin_params() const { return cherlin_; }

private:
    std::string name_;
    std::vector<std::array<std::string, 3>> forbidden_;
    std::optional<std::pair<int, int>> cherlin_;  // (K1, delta) for the built-in
};

struct ForbiddenTriple {
    Vertex a, b, c;
    Dist dab, dac, dbc;
};

// Every vertex triple whose distance triple the family forbids.
std::vector<ForbiddenTriple> check_forbidden(const MetricSpace& s, const TriangleFamily& family);

struct AmalgamationWitness {
    MetricSpace base;
    // Distance vectors of the two one-point extensions over the base.
    std::vector<int> extension1, extension2;
    std::string reason;
};

struct AmalgamationReport {
    std::string semigroup_name;
    int base_bound = 0;
    bool passed = false;
    std::optional<AmalgamationWitness> witness;
    long bases_checked = 0;  // isomorphism classes of bases
    long pairs_checked = 0;
};

// For every metric space over m with at most base_bound vertices (one per
// isomorphism class, family-respecting) and every pair of one-point
// extensions, verifies that the shortest-path amalgam exists, satisfies the
// triangle inequalities and avoids forbidden triangles. First failure is the
// witness. Requires a maximum.
AmalgamationReport check_amalgamation(const SemigroupPtr& m, int base_bound,
                                      const std::optional<TriangleFamily>& family = std::nullopt,
                                      int jobs = 1);

struct BuildResult {
    std::optional<MetricSpace> space;
    // Amalgamation failure during the build: evidence against the existence
    // hypothesis rather than a malfunction.
    std::optional<std::string> failure;
    bool ok() const { return space.has_value(); }
};

// Finite approximation of the generic structure: starting from one vertex,
// repeatedly realizes extension types (distance vectors over vertex subsets
// of size <= max_base) that the fragment does not yet realize, adjoining each
// via shortest-path amalgamation. One round sweeps every type unrealized at
// its start. Deterministic per seed.
BuildResult build_generic(const SemigroupPtr& m, int rounds, int max_base, int max_vertices,
                          std::uint64_t seed,
                          const std::optional<TriangleFamily>& family = std::nullopt);

// n-vertex space grown by one-point extensions with seeded random distance
// choices filtered by validity.
BuildResult random_space(const SemigroupPtr& m, int n, std::uint64_t seed,
                         const std::optional<TriangleFamily>& family = std::nullopt);

struct ClassificationRow {
    std::string encoding;  // canonical table encoding
    int elements = 0;
    bool valid = true;
    bool archimedean = false;
    bool has_maximum = false;
    bool all_binary_infima = false;
    std::optional<bool> amalgamation_pass;          // absent without a maximum
    std::optional<int> bound;                       // absent: none within cap
    std::optional<bool> one_supported_in_budget;    // absent without a maximum
};

// One row per enumerated semigroup; a pure function of its arguments.
std::vector<ClassificationRow> classify_semigroups(int max_size, int base_bound, int jobs = 1);

}  // namespace sgm

#endif
