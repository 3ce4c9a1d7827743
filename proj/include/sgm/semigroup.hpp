#ifndef SGM_SEMIGROUP_HPP
#define SGM_SEMIGROUP_HPP

#include <array>
#include <boost/rational.hpp>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgm/error.hpp"

namespace sgm {

using Rational = boost::rational<long long>;

// Raw table data before validation. Indices refer to positions in `elements`.
// leq[a][b] means a precedes-or-equals b.
struct SemigroupData {
    std::vector<std::string> elements;
    std::vector<std::vector<int>> op;
    std::vector<std::vector<char>> leq;
};

struct Violation {
    std::string axiom;                 // e.g. "commutativity", "absorption"
    std::vector<std::string> witness;  // element labels, minimal under scan order
};

struct ValidationReport {
    bool passed = true;
    std::vector<Violation> violations;  // one entry per violated axiom family
};

// Either the distinguished zero symbol (distance of a point to itself,
// neutral for the operation, below everything) or a carrier element index.
// Zero is never part of the carrier.
class Dist {
public:
    static constexpr Dist zero() { return Dist(-1); }
    static Dist element(int idx) {
        if (idx < 0) throw InputError("Dist::element: negative index");
        return Dist(idx);
    }

    bool is_zero() const { return v_ < 0; }
    int index() const {
        if (v_ < 0) throw InputError("Dist::index called on the zero symbol");
        return v_;
    }

    friend bool operator==(Dist a, Dist b) { return a.v_ == b.v_; }
    friend bool operator!=(Dist a, Dist b) { return a.v_ != b.v_; }

private:
    constexpr explicit Dist(int v) : v_(v) {}
    int v_;
};

// A finite partially ordered commutative semigroup. Instances always satisfy
// the five axiom families; the only way to build one is from_data (which
// validates) or one of the named constructors below. Immutable once built.
class PosetSemigroup {
public:
    // Throws InputError on malformed tables. Axiom violations are returned in
    // the report of validate(); from_data throws InputError carrying the first
    // violation so a PosetSemigroup can never hold a bad table.
    static PosetSemigroup from_data(SemigroupData data);

    int size() const { return static_cast<int>(elements_.size()); }
    const std::vector<std::string>& elements() const { return elements_; }
    const std::string& label(int a) const { return elements_.at(a); }
    std::optional<int> index_of(const std::string& label) const;

    int add(int a, int b) const { return op_[a][b]; }
    bool le(int a, int b) const { return leq_[a][b] != 0; }
    bool lt(int a, int b) const { return a != b && le(a, b); }

    // Zero-aware arithmetic: zero is neutral for the operation and the
    // minimum of the order.
    Dist add(Dist a, Dist b) const;
    bool le(Dist a, Dist b) const;

    const std::vector<std::vector<int>>& op_table() const { return op_; }
    const std::vector<std::vector<char>>& leq_table() const { return leq_; }

    SemigroupData data() const { return {elements_, op_, leq_}; }

    // Structural equality of tables and labels.
    friend bool operator==(const PosetSemigroup& x, const PosetSemigroup& y) {
        return x.elements_ == y.elements_ && x.op_ == y.op_ && x.leq_ == y.leq_;
    }

    // Same tables under the identity relabelling, ignoring label text.
    bool same_tables(const PosetSemigroup& other) const {
        return op_ == other.op_ && leq_ == other.leq_;
    }

private:
    PosetSemigroup(std::vector<std::string> elements, std::vector<std::vector<int>> op,
                   std::vector<std::vector<char>> leq)
        : elements_(std::move(elements)), op_(std::move(op)), leq_(std::move(leq)) {}

    std::vector<std::string> elements_;
    std::vector<std::vector<int>> op_;
    std::vector<std::vector<char>> leq_;
};

using SemigroupPtr = std::shared_ptr<const PosetSemigroup>;

// Checks the five axiom families (commutativity, associativity, partial
// order, absorption, monotonicity) and reports the first witness of each
// violated family. Malformed tables throw InputError instead.
ValidationReport validate(const SemigroupData& data);

// n-fold sum of a with itself. n must be >= 1 (the zero symbol is not a
// carrier element, so there is no 0-fold sum).
int n_times(const PosetSemigroup& m, int a, int n);

// Power sequence of a is nondecreasing and stabilizes within |M| steps; this
// returns its eventual value.
int stable_power(const PosetSemigroup& m, int a);

struct ArchimedeanResult {
    bool archimedean = false;
    // On failure, a pair (a, b) such that no n-fold sum of a dominates b.
    std::optional<std::pair<int, int>> witness;
};

ArchimedeanResult is_archimedean(const PosetSemigroup& m);

// The unique element above all others, if present.
std::optional<int> maximum(const PosetSemigroup& m);

// Greatest lower bound of S within the carrier; empty S yields maximum(m).
// Absent when no lower bound exists or the lower bounds have no greatest
// element.
std::optional<int> infimum(const PosetSemigroup& m, const std::vector<int>& s);

// Capped addition on {1,..,n} with the usual order.
PosetSemigroup path_semigroup(int n);

// Componentwise capped addition on {1,..,n}^k with the product order.
// Requires n >= 3, k >= 1.
PosetSemigroup product_capped(int n, int k);

struct SauerResult {
    std::optional<PosetSemigroup> semigroup;
    // Set when the derived operation is not associative.
    std::optional<std::array<Rational, 3>> associativity_witness;
};

// Carrier S (positive rationals, exact arithmetic) ordered by <=, with
// a (+) b = max{x in S : x <= a + b}. Fails with a witness triple when that
// operation is not associative.
SauerResult sauer_semigroup(std::vector<Rational> s);

// Every valid semigroup with carrier size <= max_size, one representative
// per simultaneous relabelling class of (op, leq), emitted in canonical
// order. max_size above the hard cap is an input error.
std::vector<PosetSemigroup> enumerate_pocs(int max_size, int hard_cap = 4);

// Lexicographically minimal flattened (op, leq) encoding over all carrier
// permutations; the deduplication key used by enumerate_pocs.
std::vector<int> canonical_encoding(const PosetSemigroup& m);

std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);

}  // namespace sgm

#endif
