#ifndef SGM_ERROR_HPP
#define SGM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sgm {

// Malformed or out-of-contract input: bad tables, unknown vertices, size
// mismatches, missing maximum where one is required, unresolvable infima.
// Mapped to exit code 2 by the CLI. Mathematical findings (axiom violations,
// amalgamation failures, witnesses) are ordinary return values, not errors.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sgm

#endif
