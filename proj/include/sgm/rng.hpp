#ifndef SGM_RNG_HPP
#define SGM_RNG_HPP

#include <cstdint>
#include <vector>

namespace sgm {

// splitmix64: used both as a generator and to derive independent sub-seeds.
// All sampling goes through this class so that reports are bit-reproducible
// across platforms and standard libraries (std::uniform_int_distribution is
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    bool coin() { return (next() & 1) != 0; }

    // k distinct values from [0, n), in random order.
    std::vector<int> sample_distinct(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out;
        out.reserve(k);
        for (int i = 0; i < k && !pool.empty(); ++i) {
            int j = below_int(static_cast<int>(pool.size()));
            out.push_back(pool[j]);
            pool[j] = pool.back();
            pool.pop_back();
        }
        return out;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            int j = below_int(i + 1);
            std::swap(v[i], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Stateless mix for deriving per-trial seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    Rng r(master ^ (stream * 0x9e3779b97f4a7c15ULL) ^ (index + 0x632be59bd9b4e019ULL));
    r.next();
    return r.next();
}

}  // namespace sgm

#endif
