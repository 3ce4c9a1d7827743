#ifndef SGM_INDEPENDENCE_HPP
#define SGM_INDEPENDENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgm/fragments.hpp"
#include "sgm/space.hpp"

#include <json.hpp>

namespace sgm {

struct IndependenceQuery {
    std::vector<Vertex> A, C, B;
};

enum class RelationVariant {
    // d(a,b) must equal the infimum of two-step paths through C.
    shortest_path,
    // d(a,b) only needs to be a lower bound of the two-step paths. Not an
    // independence relation; exists so the axiom checkers can demonstrate
    // that they catch a broken relation.
    lower_bound,
};

// A (+) B over C: every cross pair realizes the infimum of two-step paths
// through C. Pairs with a = b are independent exactly when the zero distance
// is attained (a lies in C). Throws InputError when a required infimum does
// not exist or C is empty with no maximum.
bool indep(const MetricSpace& s, const std::vector<Vertex>& A, const std::vector<Vertex>& C,
           const std::vector<Vertex>& B);

bool indep_variant(const MetricSpace& s, const std::vector<Vertex>& A,
                   const std::vector<Vertex>& C, const std::vector<Vertex>& B,
                   RelationVariant variant);

// All C' within C of size <= k with {a} independent from {b} over C'.
// Requires independence over C itself.
std::vector<std::vector<Vertex>> support_sets(const MetricSpace& s, Vertex a,
                                              const std::vector<Vertex>& C, Vertex b, int k);

struct SearchBudget {
    int max_vertices = 5;
    int trials = 4000;
    std::uint64_t seed = 0;
};

struct UnsupportedWitness {
    MetricSpace space;
    Vertex a, b;
    std::vector<Vertex> C;
};

// Searches for a space and query independent over C but over no subset of C
// of size <= k: exhaustively over small configurations, then by seeded random
// sampling. Absence within the budget is a valid outcome.
std::optional<UnsupportedWitness> find_unsupported_witness(const SemigroupPtr& m, int k,
                                                           const SearchBudget& budget);

struct AxiomResult {
    std::string axiom;
    bool passed = true;
    int trials = 0;
    std::uint64_t seed = 0;
    // Free-form description of the failing configuration.
    std::optional<nlohmann::json> counterexample;
};

struct AxiomReport {
    std::vector<AxiomResult> axioms;
    bool all_passed() const;
};

struct CheckOptions {
    int trials = 1000;
    std::uint64_t seed = 0;
    int jobs = 1;
    int max_a = 3;  // sampled |A|, |B| bounds
    int max_b = 3;
    int max_c = 4;  // sampled |C| bound
    RelationVariant relation = RelationVariant::shortest_path;
};

// Finitary restatements of the stationary-independence axioms, checked on
// sampled queries over the given fragments: Invariance, Symmetry,
// Monotonicity, Existence (via amalgamation), Transitivity, Stationarity (as
// uniqueness of realizations within fragments), plus independence-from-base
// extension and joint independence from pairwise independence.
AxiomReport check_sir_axioms(const FragmentSource& fragments, const CheckOptions& opts);

// Self-dependence over foreign bases, existence of a dependent pair, and
// persistence of independence under enlarging the base.
AxiomReport check_metric_like(const FragmentSource& fragments, const CheckOptions& opts);

// Metricity and Triviality.
AxiomReport check_derived(const FragmentSource& fragments, const CheckOptions& opts);

}  // namespace sgm

#endif
