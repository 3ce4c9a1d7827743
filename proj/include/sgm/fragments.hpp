#ifndef SGM_FRAGMENTS_HPP
#define SGM_FRAGMENTS_HPP

#include <cstdint>
#include <vector>

#include "sgm/space.hpp"

namespace sgm {

// Recipe for the finite test fragments the axiom checkers sample from.
// Implemented by the generic-structure builders; kept here so the checkers
// do not need their full interface.
struct FragmentSpec {
    enum class Mode { generic, random, mixed };
    Mode mode = Mode::mixed;
    int count = 4;
    int rounds = 2;        // saturation sweeps for generic fragments
    int max_base = 2;      // extension-type base size for generic fragments
    int max_vertices = 12;
    std::uint64_t seed = 0;
};

struct FragmentSource {
    SemigroupPtr semigroup;
    FragmentSpec spec;
};

// An amalgamation failure while growing a fragment. Callers usually treat it
// as a mathematical finding about the semigroup, not a usage problem.
class FragmentBuildError : public InputError {
public:
    explicit FragmentBuildError(const std::string& what) : InputError(what) {}
};

// Deterministic in every field of the source. Throws FragmentBuildError when
// a builder hits an amalgamation failure and plain InputError for malformed
// parameters.
std::vector<MetricSpace> make_fragments(const FragmentSource& source);

}  // namespace sgm

#endif
