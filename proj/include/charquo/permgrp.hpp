#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <thread>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffield.hpp"
#include "parallel.hpp"

namespace charquo {

/// 0-based image array: point i goes to perm[i].
using Perm = std::vector<u32>;
using BigInt = boost::multiprecision::cpp_int;

inline Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

/// "x then y", matching left-to-right braid words.
inline Perm compose(const Perm& x, const Perm& y) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
    return r;
}

inline Perm inverse(const Perm& x) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[x[i]] = static_cast<u32>(i);
    return r;
}

inline bool is_identity(const Perm& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != i) return false;
    return true;
}

inline bool is_bijection(const Perm& x) {
    std::vector<char> seen(x.size(), 0);
    for (u32 v : x) {
        if (v >= x.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

inline Perm perm_power(const Perm& x, long k) {
    Perm base = k >= 0 ? x : inverse(x);
    Perm r = identity_perm(x.size());
    for (long i = 0; i < std::labs(k); ++i) r = compose(r, base);
    return r;
}

/// Cycle length through each point.
inline std::vector<u32> cycle_length_at(const Perm& x) {
    std::vector<u32> len(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (len[i]) continue;
        u32 L = 0;
        std::size_t j = i;
        do {
            ++L;
            j = x[j];
        } while (j != i);
        j = i;
        do {
            len[j] = L;
            j = x[j];
        } while (j != i);
    }
    return len;
}

/// Sorted multiset of cycle lengths (fixed points included).
inline std::vector<u32> cycle_type(const Perm& x) {
    std::vector<char> seen(x.size(), 0);
    std::vector<u32> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (seen[i]) continue;
        u32 L = 0;
        for (std::size_t j = i; !seen[j]; j = x[j]) {
            seen[j] = 1;
            ++L;
        }
        out.push_back(L);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline int sign(const Perm& x) {
    std::size_t cycles = cycle_type(x).size();
    return ((x.size() - cycles) % 2 == 0) ? 1 : -1;
}

inline std::string cycle_notation(const Perm& x) {
    std::ostringstream os;
    std::vector<char> seen(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (seen[i] || x[i] == i) continue;
        os << '(';
        bool first = true;
        for (std::size_t j = i; !seen[j]; j = x[j]) {
            seen[j] = 1;
            if (!first) os << ' ';
            os << j;
            first = false;
        }
        os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

/// Builds a permutation of degree n from cycles.
inline Perm from_cycles(std::size_t n, const std::vector<std::vector<u32>>& cycles) {
    Perm p = identity_perm(n);
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
    return p;
}

// ---------------------------------------------------------------------------

namespace detail {
struct UnionFind {
    std::vector<u32> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    u32 find(u32 x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(u32 a, u32 b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};
}  // namespace detail

inline bool is_transitive(const std::vector<Perm>& gens, std::size_t n) {
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<u32> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        u32 x = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            u32 y = g[x];
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == n;
}

/// Block system generated by {alpha, beta}: labels[i] is the least point of
/// the block containing i.
struct BlockSystem {
    std::vector<u32> labels;
    std::size_t block_size = 0;
    std::size_t num_blocks = 0;
    bool trivial() const { return num_blocks == 1; }
};

inline BlockSystem minimal_block(const std::vector<Perm>& gens, u32 alpha, u32 beta, std::size_t n) {
    detail::UnionFind uf(n);
    std::vector<std::pair<u32, u32>> work;
    if (uf.unite(alpha, beta)) work.emplace_back(alpha, beta);
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        for (const auto& g : gens) {
            u32 u = uf.find(g[x]), v = uf.find(g[y]);
            if (u != v) {
                uf.unite(u, v);
                work.emplace_back(u, v);
            }
        }
    }
    BlockSystem bs;
    bs.labels.resize(n);
    std::vector<std::size_t> sizes(n, 0);
    for (u32 i = 0; i < n; ++i) {
        bs.labels[i] = uf.find(i);
        ++sizes[bs.labels[i]];
    }
    for (std::size_t s : sizes)
        if (s) ++bs.num_blocks;
    bs.block_size = sizes[bs.labels[alpha]];
    return bs;
}

// ---------------------------------------------------------------------------
// Schreier-Sims

class BSGS {
public:
    static constexpr std::size_t kDefaultBound = 5000;

    BSGS(const std::vector<Perm>& gens, std::size_t n, std::size_t bound = kDefaultBound) : n_(n) {
        if (n > bound)
            throw std::length_error("schreier_sims: degree " + std::to_string(n) + " exceeds oracle bound " +
                                    std::to_string(bound));
        for (const auto& g : gens) {
            if (g.size() != n) throw std::invalid_argument("schreier_sims: generator degree mismatch");
            extend(0, g);
        }
    }

    std::size_t degree() const { return n_; }
    std::size_t depth() const { return levels_.size(); }
    std::vector<u32> base() const {
        std::vector<u32> b;
        for (const auto& L : levels_) b.push_back(L.base);
        return b;
    }
    std::vector<Perm> strong_generators() const {
        std::vector<Perm> out;
        for (const auto& L : levels_) out.insert(out.end(), L.gens.begin(), L.gens.end());
        return out;
    }
    std::vector<std::size_t> orbit_lengths() const {
        std::vector<std::size_t> out;
        for (const auto& L : levels_) out.push_back(L.orbit.size());
        return out;
    }
    BigInt order() const {
        BigInt r = 1;
        for (const auto& L : levels_) r *= L.orbit.size();
        return r;
    }
    bool contains(const Perm& g) const { return is_identity(sift(0, g)); }

private:
    struct Level {
        u32 base;
        std::vector<Perm> gens;
        std::vector<u32> orbit;
        std::vector<std::optional<Perm>> trans;  // trans[y]: base -> y
    };

    Perm sift(std::size_t i, Perm g) const {
        for (; i < levels_.size(); ++i) {
            const Level& L = levels_[i];
            u32 b = g[L.base];
            if (!L.trans[b]) return g;
            g = compose(g, inverse(*L.trans[b]));
        }
        return g;
    }

    void add_level(const Perm& g) {
        u32 b = 0;
        while (g[b] == b) ++b;
        Level L;
        L.base = b;
        L.trans.assign(n_, std::nullopt);
        L.trans[b] = identity_perm(n_);
        L.orbit.push_back(b);
        levels_.push_back(std::move(L));
    }

    // g fixes the first i base points; adds it to level i and restores the
    // stabilizer-chain property below.
    void extend(std::size_t i, const Perm& g) {
        if (is_identity(sift(i, g))) return;
        if (i == levels_.size()) add_level(g);
        levels_[i].gens.push_back(g);
        const std::size_t s_new = levels_[i].gens.size() - 1;
        std::vector<u32> queue;
        const std::size_t old = levels_[i].orbit.size();
        for (std::size_t k = 0; k < old; ++k) process(i, levels_[i].orbit[k], s_new, queue);
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (std::size_t s = 0; s < levels_[i].gens.size(); ++s) process(i, queue[qi], s, queue);
    }

    void process(std::size_t i, u32 x, std::size_t s, std::vector<u32>& queue) {
        const Perm gen = levels_[i].gens[s];
        const Perm tx = compose(*levels_[i].trans[x], gen);
        const u32 y = gen[x];
        if (!levels_[i].trans[y]) {
            levels_[i].trans[y] = tx;
            levels_[i].orbit.push_back(y);
            queue.push_back(y);
            return;
        }
        Perm h = compose(tx, inverse(*levels_[i].trans[y]));
        if (!is_identity(h)) extend(i + 1, h);
    }

    std::size_t n_;
    std::deque<Level> levels_;
};

inline BSGS schreier_sims(const std::vector<Perm>& gens, std::size_t n, std::size_t bound = BSGS::kDefaultBound) {
    return BSGS(gens, n, bound);
}

inline BigInt factorial(std::size_t n) {
    BigInt r = 1;
    for (std::size_t k = 2; k <= n; ++k) r *= k;
    return r;
}

// ---------------------------------------------------------------------------
// giant recognition

struct GiantCertificate {
    std::vector<u32> word;  // generator indices, applied left to right
    u64 q = 0;              // prime cycle length
    std::size_t n = 0;
    std::size_t trial = 0;
};

struct GiantSearch {
    std::optional<GiantCertificate> certificate;
    std::size_t trials = 0;
    std::string reason;  // set when inconclusive
};

/// Primes q with n/2 < q < n - 2.
inline bool prime_window_nonempty(std::size_t n) {
    for (u64 q = n / 2 + 1; q + 2 < n; ++q)
        if (is_prime_u64(q)) return true;
    return false;
}

inline bool in_prime_window(u64 q, std::size_t n) { return 2 * q > n && q + 2 < n && is_prime_u64(q); }

inline Perm word_perm(const std::vector<Perm>& gens, const std::vector<u32>& word, std::size_t n) {
    Perm r = identity_perm(n);
    for (u32 g : word) r = compose(r, gens.at(g));
    return r;
}

/// Returns the prime cycle length in the window, if any.
inline std::optional<u64> window_cycle(const Perm& x) {
    const std::size_t n = x.size();
    for (u32 L : cycle_type(x))
        if (in_prime_window(L, n)) return L;
    return std::nullopt;
}

inline bool validate_certificate(const std::vector<Perm>& gens, const GiantCertificate& c) {
    if (!in_prime_window(c.q, c.n)) return false;
    Perm x = word_perm(gens, c.word, c.n);
    for (u32 L : cycle_type(x))
        if (L == c.q) return true;
    return false;
}

struct GiantOptions {
    u64 seed = 1;
    std::size_t max_trials = 4000;
    double mean_length = 60.0;
    unsigned threads = 1;
};

namespace detail {
inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::vector<u32> random_word(std::size_t ngens, u64 seed, std::size_t trial, double mean_length) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(trial)));
    double base = mean_length * 0.5;
    std::geometric_distribution<int> jitter(1.0 / std::max(1.0, mean_length - base + 1.0));
    std::size_t len = static_cast<std::size_t>(base) + jitter(rng) + 1;
    std::uniform_int_distribution<u32> pick(0, static_cast<u32>(ngens - 1));
    std::vector<u32> w(len);
    for (auto& l : w) l = pick(rng);
    return w;
}
}  // namespace detail

/// Random-word search for a prime cycle of length in (n/2, n-2).  Together
/// with transitivity this forces the group to contain A_n (Jordan).  Each
/// trial has its own seed, and the lowest successful trial index wins, so the
/// result does not depend on the thread count.
inline GiantSearch giant_certificate(const std::vector<Perm>& gens, std::size_t n, const GiantOptions& opt = {}) {
    GiantSearch out;
    if (!prime_window_nonempty(n)) {
        out.reason = "n too small - use schreier_sims";
        return out;
    }
    if (gens.empty()) {
        out.reason = "no generators";
        return out;
    }
    const unsigned threads = std::max(1u, opt.threads);
    const std::size_t batch = threads;
    for (std::size_t start = 0; start < opt.max_trials; start += batch) {
        std::size_t stop = std::min(opt.max_trials, start + batch);
        std::vector<std::optional<GiantCertificate>> hits(stop - start);
        auto work = [&](std::size_t t) {
            auto w = detail::random_word(gens.size(), opt.seed, t, opt.mean_length);
            Perm x = word_perm(gens, w, n);
            if (auto q = window_cycle(x)) hits[t - start] = GiantCertificate{w, *q, n, t};
        };
        if (threads == 1) {
            for (std::size_t t = start; t < stop; ++t) work(t);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t t = start; t < stop; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
        out.trials = stop;
        for (auto& h : hits)
            if (h) {
                out.trials = h->trial + 1;
                out.certificate = *h;
                return out;
            }
    }
    out.reason = "budget exhausted";
    return out;
}

enum class GiantClass { Alternating, Symmetric, Inconclusive };

inline const char* to_string(GiantClass c) {
    switch (c) {
        case GiantClass::Alternating: return "Alternating";
        case GiantClass::Symmetric: return "Symmetric";
        case GiantClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct GiantVerdict {
    GiantClass cls = GiantClass::Inconclusive;
    std::optional<GiantCertificate> certificate;
    std::string method;  // "certificate", "schreier_sims", or why inconclusive
    std::size_t trials = 0;
};

/// One-sided: Inconclusive never means "not a giant".  When the prime window
/// is empty the exact order from Schreier-Sims decides instead.
inline GiantVerdict classify_giant(const std::vector<Perm>& gens, std::size_t n, const GiantOptions& opt = {}) {
    GiantVerdict v;
    if (!is_transitive(gens, n)) {
        v.method = "intransitive";
        return v;
    }
    bool all_even = std::all_of(gens.begin(), gens.end(), [](const Perm& g) { return sign(g) == 1; });
    if (!prime_window_nonempty(n)) {
        if (n > BSGS::kDefaultBound) {
            v.method = "n too small for certificate and too large for oracle";
            return v;
        }
        BigInt ord = schreier_sims(gens, n).order();
        BigInt full = factorial(n);
        v.method = "schreier_sims";
        if (ord == full)
            v.cls = all_even ? GiantClass::Alternating : GiantClass::Symmetric;
        else if (ord * 2 == full)
            v.cls = GiantClass::Alternating;
        return v;
    }
    GiantSearch s = giant_certificate(gens, n, opt);
    v.trials = s.trials;
    if (!s.certificate) {
        v.method = s.reason;
        return v;
    }
    v.certificate = s.certificate;
    v.method = "certificate";
    v.cls = all_even ? GiantClass::Alternating : GiantClass::Symmetric;
    return v;
}

}  // namespace charquo
