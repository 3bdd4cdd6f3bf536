#pragma once

#include <algorithm>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "braidquandle.hpp"
#include "charvar.hpp"
#include "ffield.hpp"
#include "parallel.hpp"
#include "permgrp.hpp"

namespace charquo {

struct KeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept {
        u64 h = 0xcbf29ce484222325ULL;
        for (u32 v : k) {
            h ^= v;
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::size_t partial) : std::runtime_error(what), partial_(partial) {}
    std::size_t partial() const { return partial_; }

private:
    std::size_t partial_;
};

/// Deduplicated orbit: points[i] is a determinant-1 representative whose
/// fast key is keys[i]; keys are strictly ascending.
struct OrbitIndex {
    PrimeField F;
    std::vector<Quad<Mat2>> points;
    std::vector<CanonicalKey> keys;
    std::unordered_map<CanonicalKey, u32, KeyHash> key_to_index;

    std::size_t size() const { return points.size(); }

    std::optional<u32> find(const CanonicalKey& k) const {
        auto it = key_to_index.find(k);
        if (it == key_to_index.end()) return std::nullopt;
        return it->second;
    }
    u32 index_of(const Quad<Mat2>& q) const {
        auto i = find(fast_key(F, q));
        if (!i) throw std::logic_error("orbit: image key missing (index corrupted or set not closed)");
        return *i;
    }
};

struct EnumerateOptions {
    std::size_t max_points = 20'000'000;
    unsigned threads = 1;
    /// Frontier processing order; only used by tests of traversal independence.
    bool reverse_frontier = false;
};

inline const std::array<int, 6>& all_letters() {
    static const std::array<int, 6> L = {1, -1, 2, -2, 3, -3};
    return L;
}

/// Breadth-first closure of {P} under sigma_i^{+-1}, deduplicated by the
/// canonical trace key; indices are then reassigned by ascending key.
inline OrbitIndex enumerate(const Quad<Mat2>& P, const Params& prm, const EnumerateOptions& opt = {}) {
    const PrimeField& F = prm.F;
    const SL2Group G{F};
    if (gamma(G, P) != prm.gamma || delta(G, P) != prm.delta)
        throw std::invalid_argument(gamma(G, P) != prm.gamma ? "gamma mismatch" : "delta mismatch");

    std::vector<Quad<Mat2>> pts{P};
    std::vector<CanonicalKey> keys{fast_key(F, P)};
    std::unordered_map<CanonicalKey, u32, KeyHash> seen;
    seen.emplace(keys[0], 0);
    std::vector<u32> frontier{0};

    while (!frontier.empty()) {
        if (opt.reverse_frontier) std::reverse(frontier.begin(), frontier.end());
        const std::size_t m = frontier.size();
        std::vector<Quad<Mat2>> img(m * 6);
        std::vector<CanonicalKey> ik(m * 6);
        parallel_for(m, opt.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                for (int j = 0; j < 6; ++j) {
                    img[i * 6 + j] = apply_letter(G, all_letters()[j], pts[frontier[i]]);
                    ik[i * 6 + j] = fast_key(F, img[i * 6 + j]);
                }
        });
        std::vector<u32> next;
        for (std::size_t t = 0; t < m * 6; ++t) {
            auto [it, fresh] = seen.emplace(ik[t], static_cast<u32>(pts.size()));
            if (!fresh) continue;
            if (pts.size() >= opt.max_points)
                throw BudgetExceeded("orbit: point budget " + std::to_string(opt.max_points) + " exceeded",
                                     pts.size());
            next.push_back(static_cast<u32>(pts.size()));
            pts.push_back(img[t]);
            keys.push_back(ik[t]);
        }
        frontier = std::move(next);
    }

    std::vector<u32> order(pts.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](u32 x, u32 y) { return keys[x] < keys[y]; });
    OrbitIndex O{F, {}, {}, {}};
    O.points.reserve(pts.size());
    O.keys.reserve(pts.size());
    O.key_to_index.reserve(pts.size());
    for (u32 i = 0; i < order.size(); ++i) {
        O.points.push_back(pts[order[i]]);
        O.keys.push_back(keys[order[i]]);
        O.key_to_index.emplace(keys[order[i]], i);
    }
    return O;
}

inline Perm perm_of(const BraidWord& w, const OrbitIndex& O, unsigned threads = 1) {
    const SL2Group G{O.F};
    Perm out(O.size());
    parallel_for(O.size(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = O.index_of(apply_word(G, w, O.points[i]));
    });
    return out;
}

/// Matrices g, h of determinant 1 with g gamma^-1 g^-1 = gamma and
/// h^-1 delta^-1 h = delta (first in enumeration order).
struct EpsilonTwist {
    Mat2 g, h;
};

inline EpsilonTwist epsilon_twist(const Params& prm) {
    const PrimeField& F = prm.F;
    auto gs = sl2_conjugators(F, adj(F, prm.gamma), prm.gamma);
    auto hs = sl2_conjugators(F, prm.delta, adj(F, prm.delta));
    if (gs.empty() || hs.empty()) throw std::invalid_argument("epsilon: no determinant-1 conjugators");
    return {*std::min_element(gs.begin(), gs.end()), *std::min_element(hs.begin(), hs.end())};
}

inline Quad<Mat2> epsilon_hat(const PrimeField& F, const EpsilonTwist& tw, const Quad<Mat2>& q) {
    Quad<Mat2> e = epsilon(q);
    for (auto& m : e) m = mul(F, tw.g, m, tw.h);
    return e;
}

inline Perm epsilon_perm(const OrbitIndex& O, const Params& prm, unsigned threads = 1) {
    const EpsilonTwist tw = epsilon_twist(prm);
    Perm out(O.size());
    parallel_for(O.size(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            auto k = O.find(fast_key(O.F, epsilon_hat(O.F, tw, O.points[i])));
            if (!k) throw std::runtime_error("epsilon does not preserve orbit");
            out[i] = *k;
        }
    });
    return out;
}

inline const BraidWord& f2_word_x() {
    static const BraidWord w{1, -3};
    return w;
}
inline const BraidWord& f2_word_y() {
    static const BraidWord w{2, 1, -3, -2};
    return w;
}

struct F2Perms {
    Perm x, y;
};

inline F2Perms f2_perms(const OrbitIndex& O, unsigned threads = 1) {
    return {perm_of(f2_word_x(), O, threads), perm_of(f2_word_y(), O, threads)};
}

// ---------------------------------------------------------------------------
// dump format: "CHQO", u32 version, u32 p, u64 n, then n*7 u32 (little endian)

inline constexpr u32 kDumpVersion = 1;

namespace detail {
template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}
template <class T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) throw std::runtime_error("orbit dump: truncated");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}
}  // namespace detail

inline void write_dump(const std::string& path, const OrbitIndex& O) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("orbit dump: cannot open " + tmp);
        os.write("CHQO", 4);
        detail::put_le<u32>(os, kDumpVersion);
        detail::put_le<u32>(os, O.F.p());
        detail::put_le<u64>(os, O.size());
        for (const auto& k : O.keys)
            for (u32 v : k) detail::put_le<u32>(os, v);
        if (!os) throw std::runtime_error("orbit dump: write failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("orbit dump: rename failed");
}

struct OrbitDump {
    u32 p = 0;
    std::vector<CanonicalKey> keys;
};

inline OrbitDump read_dump(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("orbit dump: cannot open " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "CHQO", 4) != 0) throw std::runtime_error("orbit dump: bad magic");
    u32 version = detail::get_le<u32>(is);
    if (version != kDumpVersion) throw std::runtime_error("orbit dump: unsupported version");
    OrbitDump d;
    d.p = detail::get_le<u32>(is);
    u64 n = detail::get_le<u64>(is);
    d.keys.resize(n);
    for (auto& k : d.keys)
        for (auto& v : k) v = detail::get_le<u32>(is);
    return d;
}

}  // namespace charquo
