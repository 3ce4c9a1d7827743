#include "sgm/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace sgm {

namespace {

void require_well_formed(const SemigroupData& d) {
    const std::size_t m = d.elements.size();
    if (m == 0) throw InputError("semigroup: empty carrier");
    std::set<std::string> seen;
    for (const auto& label : d.elements) {
        if (label.empty()) throw InputError("semigroup: empty element label");
        if (!seen.insert(label).second)
            throw InputError("semigroup: duplicate element label '" + label + "'");
    }
    if (d.op.size() != m || d.leq.size() != m)
        throw InputError("semigroup: tables are not " + std::to_string(m) + "x" + std::to_string(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (d.op[i].size() != m || d.leq[i].size() != m)
            throw InputError("semigroup: row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < m; ++j) {
            if (d.op[i][j] < 0 || static_cast<std::size_t>(d.op[i][j]) >= m)
                throw InputError("semigroup: op[" + std::to_string(i) + "][" + std::to_string(j) +
                                 "] out of range");
        }
    }
}

}  // namespace

ValidationReport validate(const SemigroupData& d) {
    require_well_formed(d);
    const int m = static_cast<int>(d.elements.size());
    auto op = [&](int a, int b) { return d.op[a][b]; };
    auto le = [&](int a, int b) { return d.leq[a][b] != 0; };
    auto lab = [&](int a) { return d.elements[a]; };

    ValidationReport report;
    auto record = [&](const std::string& axiom, std::vector<std::string> witness) {
        report.violations.push_back({axiom, std::move(witness)});
    };

    for (int a = 0; a < m; ++a) {
        bool done = false;
        for (int b = 0; b < m && !done; ++b)
            if (op(a, b) != op(b, a)) {
                record("commutativity", {lab(a), lab(b)});
                done = true;
            }
        if (done) break;
    }
    for (int a = 0; a < m; ++a) {
        bool done = false;
        for (int b = 0; b < m && !done; ++b)
            for (int c = 0; c < m && !done; ++c)
                if (op(op(a, b), c) != op(a, op(b, c))) {
                    record("associativity", {lab(a), lab(b), lab(c)});
                    done = true;
                }
        if (done) break;
    }
    for (int a = 0; a < m; ++a)
        if (!le(a, a)) {
            record("order reflexivity", {lab(a)});
            break;
        }
    {
        bool done = false;
        for (int a = 0; a < m && !done; ++a)
            for (int b = 0; b < m && !done; ++b)
                if (a != b && le(a, b) && le(b, a)) {
                    record("order antisymmetry", {lab(a), lab(b)});
                    done = true;
                }
    }
    {
        bool done = false;
        for (int a = 0; a < m && !done; ++a)
            for (int b = 0; b < m && !done; ++b)
                for (int c = 0; c < m && !done; ++c)
                    if (le(a, b) && le(b, c) && !le(a, c)) {
                        record("order transitivity", {lab(a), lab(b), lab(c)});
                        done = true;
                    }
    }
    {
        bool done = false;
        for (int a = 0; a < m && !done; ++a)
            for (int b = 0; b < m && !done; ++b)
                if (!le(a, op(a, b))) {
                    record("absorption", {lab(a), lab(b)});
                    done = true;
                }
    }
    {
        bool done = false;
        for (int a = 0; a < m && !done; ++a)
            for (int b = 0; b < m && !done; ++b)
                for (int c = 0; c < m && !done; ++c)
                    if (le(b, c) && !le(op(a, b), op(a, c))) {
                        record("monotonicity", {lab(a), lab(b), lab(c)});
                        done = true;
                    }
    }

    report.passed = report.violations.empty();
    return report;
}

PosetSemigroup PosetSemigroup::from_data(SemigroupData data) {
    ValidationReport report = validate(data);
    if (!report.passed) {
        std::ostringstream msg;
        msg << "semigroup violates " << report.violations.front().axiom << " at (";
        const auto& w = report.violations.front().witness;
        for (std::size_t i = 0; i < w.size(); ++i) msg << (i ? "," : "") << w[i];
        msg << ")";
        throw InputError(msg.str());
    }
    return PosetSemigroup(std::move(data.elements), std::move(data.op), std::move(data.leq));
}

std::optional<int> PosetSemigroup::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (elements_[i] == label) return i;
    return std::nullopt;
}

Dist PosetSemigroup::add(Dist a, Dist b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Dist::element(add(a.index(), b.index()));
}

bool PosetSemigroup::le(Dist a, Dist b) const {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    return le(a.index(), b.index());
}

int n_times(const PosetSemigroup& m, int a, int n) {
    if (n < 1) throw InputError("n_times: n must be >= 1");
    int acc = a;
    for (int i = 1; i < n; ++i) acc = m.add(acc, a);
    return acc;
}

int stable_power(const PosetSemigroup& m, int a) { return n_times(m, a, m.size()); }

ArchimedeanResult is_archimedean(const PosetSemigroup& m) {
    // n-fold powers of a are nondecreasing, so some n works iff the stable
    // power dominates b.
    for (int a = 0; a < m.size(); ++a) {
        int top = stable_power(m, a);
        for (int b = 0; b < m.size(); ++b)
            if (!m.le(b, top)) return {false, std::make_pair(a, b)};
    }
    return {true, std::nullopt};
}

std::optional<int> maximum(const PosetSemigroup& m) {
    for (int a = 0; a < m.size(); ++a) {
        bool top = true;
        for (int b = 0; b < m.size() && top; ++b) top = m.le(b, a);
        if (top) return a;
    }
    return std::nullopt;
}

std::optional<int> infimum(const PosetSemigroup& m, const std::vector<int>& s) {
    for (int x : s)
        if (x < 0 || x >= m.size()) throw InputError("infimum: element index out of range");
    if (s.empty()) return maximum(m);
    std::vector<int> lower;
    for (int x = 0; x < m.size(); ++x) {
        bool lb = true;
        for (int y : s)
            if (!m.le(x, y)) {
                lb = false;
                break;
            }
        if (lb) lower.push_back(x);
    }
    for (int x : lower) {
        bool greatest = true;
        for (int y : lower)
            if (!m.le(y, x)) {
                greatest = false;
                break;
            }
        if (greatest) return x;
    }
    return std::nullopt;
}

PosetSemigroup path_semigroup(int n) {
    if (n < 1) throw InputError("path_semigroup: n must be >= 1");
    SemigroupData d;
    for (int i = 1; i <= n; ++i) d.elements.push_back(std::to_string(i));
    d.op.assign(n, std::vector<int>(n));
    d.leq.assign(n, std::vector<char>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            d.op[a][b] = std::min(n - 1, a + b + 1);  // values a+1, b+1 capped at n
            d.leq[a][b] = a <= b;
        }
    return PosetSemigroup::from_data(std::move(d));
}

PosetSemigroup product_capped(int n, int k) {
    if (n < 3) throw InputError("product_capped: n must be >= 3");
    if (k < 1) throw InputError("product_capped: k must be >= 1");
    int count = 1;
    for (int i = 0; i < k; ++i) {
        if (count > 4096 / n) throw InputError("product_capped: carrier too large");
        count *= n;
    }
    // element index encodes its tuple in base n, most significant coordinate
    // first; tuple entries run 1..n
    auto coord = [&](int idx, int pos) {
        for (int i = k - 1; i > pos; --i) idx /= n;
        return idx % n + 1;
    };
    SemigroupData d;
    d.elements.reserve(count);
    for (int idx = 0; idx < count; ++idx) {
        std::string label = "(";
        for (int pos = 0; pos < k; ++pos) {
            if (pos) label += ",";
            label += std::to_string(coord(idx, pos));
        }
        label += ")";
        d.elements.push_back(label);
    }
    d.op.assign(count, std::vector<int>(count));
    d.leq.assign(count, std::vector<char>(count));
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            int sum = 0;
            bool below = true;
            for (int pos = 0; pos < k; ++pos) {
                int ca = coord(a, pos), cb = coord(b, pos);
                sum = sum * n + (std::min(n, ca + cb) - 1);
                below = below && ca <= cb;
            }
            d.op[a][b] = sum;
            d.leq[a][b] = below;
        }
    return PosetSemigroup::from_data(std::move(d));
}

SauerResult sauer_semigroup(std::vector<Rational> s) {
    if (s.empty()) throw InputError("sauer_semigroup: empty carrier");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const auto& x : s)
        if (x <= Rational(0)) throw InputError("sauer_semigroup: all values must be positive");

    const int m = static_cast<int>(s.size());
    // max{x in S : x <= a+b}; nonempty because a+b >= a >= min(S)
    auto combine = [&](int a, int b) {
        Rational sum = s[a] + s[b];
        int best = -1;
        for (int x = 0; x < m; ++x)
            if (s[x] <= sum) best = x;
        return best;
    };

    std::vector<std::vector<int>> op(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) op[a][b] = combine(a, b);

    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (op[op[a][b]][c] != op[a][op[b][c]]) {
                    SauerResult r;
                    r.associativity_witness = std::array<Rational, 3>{s[a], s[b], s[c]};
                    return r;
                }

    SemigroupData d;
    for (const auto& x : s) d.elements.push_back(format_rational(x));
    d.op = std::move(op);
    d.leq.assign(m, std::vector<char>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) d.leq[a][b] = s[a] <= s[b];
    SauerResult r;
    r.semigroup = PosetSemigroup::from_data(std::move(d));
    return r;
}

std::vector<int> canonical_encoding(const PosetSemigroup& m) {
    const int n = m.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    std::vector<int> inv(n);
    do {
        for (int i = 0; i < n; ++i) inv[perm[i]] = i;
        std::vector<int> enc;
        enc.reserve(2 * n * n);
        // op under relabelling i -> perm-position: enc uses new indices
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) enc.push_back(inv[m.add(perm[a], perm[b])]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) enc.push_back(m.le(perm[a], perm[b]) ? 1 : 0);
        if (best.empty() || enc < best) best = std::move(enc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

PosetSemigroup from_encoding(int n, const std::vector<int>& enc) {
    SemigroupData d;
    for (int i = 0; i < n; ++i) d.elements.push_back("e" + std::to_string(i));
    d.op.assign(n, std::vector<int>(n));
    d.leq.assign(n, std::vector<char>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            d.op[a][b] = enc[a * n + b];
            d.leq[a][b] = static_cast<char>(enc[n * n + a * n + b]);
        }
    return PosetSemigroup::from_data(std::move(d));
}

// All reflexive antisymmetric transitive relations on n points.
std::vector<std::vector<std::vector<char>>> all_partial_orders(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) pairs.emplace_back(a, b);
    std::vector<std::vector<std::vector<char>>> out;
    const int bits = static_cast<int>(pairs.size());
    for (long mask = 0; mask < (1L << bits); ++mask) {
        std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i) leq[i][i] = 1;
        for (int i = 0; i < bits; ++i)
            if (mask & (1L << i)) leq[pairs[i].first][pairs[i].second] = 1;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                if (a != b && leq[a][b] && leq[b][a]) ok = false;
                for (int c = 0; c < n && ok; ++c)
                    if (leq[a][b] && leq[b][c] && !leq[a][c]) ok = false;
            }
        if (ok) out.push_back(std::move(leq));
    }
    return out;
}

}  // namespace

std::vector<PosetSemigroup> enumerate_pocs(int max_size, int hard_cap) {
    if (max_size < 1) throw InputError("enumerate_pocs: max_size must be >= 1");
    if (max_size > hard_cap)
        throw InputError("enumerate_pocs: max_size exceeds cap of " + std::to_string(hard_cap));

    std::vector<PosetSemigroup> out;
    for (int n = 1; n <= max_size; ++n) {
        auto orders = all_partial_orders(n);

        // commutative tables, filled on the upper triangle
        std::vector<std::pair<int, int>> cells;
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) cells.emplace_back(a, b);
        const int ncells = static_cast<int>(cells.size());
        std::vector<int> choice(ncells, 0);
        std::vector<std::vector<int>> op(n, std::vector<int>(n));

        std::set<std::vector<int>> seen;
        bool more = true;
        while (more) {
            for (int i = 0; i < ncells; ++i) {
                op[cells[i].first][cells[i].second] = choice[i];
                op[cells[i].second][cells[i].first] = choice[i];
            }
            bool assoc = true;
            for (int a = 0; a < n && assoc; ++a)
                for (int b = a; b < n && assoc; ++b)
                    for (int c = b; c < n && assoc; ++c) {
                        // with commutativity, checking the three rotations of
                        // each sorted triple covers all bracketings
                        if (op[op[a][b]][c] != op[a][op[b][c]] ||
                            op[op[b][c]][a] != op[b][op[c][a]] ||
                            op[op[c][a]][b] != op[c][op[a][b]])
                            assoc = false;
                    }
            if (assoc) {
                for (const auto& leq : orders) {
                    bool ok = true;
                    for (int a = 0; a < n && ok; ++a)
                        for (int b = 0; b < n && ok; ++b)
                            if (!leq[a][op[a][b]]) ok = false;
                    for (int a = 0; a < n && ok; ++a)
                        for (int b = 0; b < n && ok; ++b)
                            for (int c = 0; c < n && ok; ++c)
                                if (leq[b][c] && !leq[op[a][b]][op[a][c]]) ok = false;
                    if (!ok) continue;

                    SemigroupData d;
                    for (int i = 0; i < n; ++i) d.elements.push_back("e" + std::to_string(i));
                    d.op = op;
                    d.leq = leq;
                    auto sg = PosetSemigroup::from_data(std::move(d));
                    seen.insert(canonical_encoding(sg));
                }
            }
            // next table
            int pos = ncells - 1;
            while (pos >= 0 && choice[pos] == n - 1) choice[pos--] = 0;
            if (pos < 0)
                more = false;
            else
                ++choice[pos];
        }

        for (const auto& enc : seen) out.push_back(from_encoding(n, enc));
    }
    return out;
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
    auto bad = [&]() { return InputError("cannot parse rational '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            long long num = std::stoll(text.substr(0, slash));
            long long den = std::stoll(text.substr(slash + 1));
            if (den == 0) throw bad();
            return Rational(num, den);
        }
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string frac = text.substr(dot + 1);
            if (frac.empty() || frac.size() > 9) throw bad();
            long long whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
            long long num = std::stoll(frac);
            long long den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            bool neg = !text.empty() && text[0] == '-';
            Rational r(std::abs(whole), 1);
            r += Rational(num, den);
            return neg ? -r : r;
        }
        return Rational(std::stoll(text), 1);
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
}

}  // namespace sgm
