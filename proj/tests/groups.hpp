#pragma once

// Small permutation groups of degree <= 12 with known orders.

#include <string>
#include <vector>

#include "charquo/permgrp.hpp"

namespace groups {

using namespace charquo;

struct Named {
    std::string name;
    std::vector<Perm> gens;
    std::size_t n;
    u64 order;  // textbook order
};

inline Perm cycle(std::size_t n, std::vector<u32> c) { return from_cycles(n, {std::move(c)}); }

inline Perm rotation(std::size_t n) {
    std::vector<u32> c(n);
    for (u32 i = 0; i < n; ++i) c[i] = i;
    return cycle(n, c);
}

inline u64 fact(std::size_t n) { return n <= 1 ? 1 : n * fact(n - 1); }

inline Named symmetric(std::size_t n) { return {"S" + std::to_string(n), {cycle(n, {0, 1}), rotation(n)}, n, fact(n)}; }

inline Named alternating(std::size_t n) {
    std::vector<Perm> g;
    for (u32 i = 2; i < n; ++i) g.push_back(cycle(n, {0, 1, i}));
    return {"A" + std::to_string(n), g, n, fact(n) / 2};
}

inline Named cyclic(std::size_t n) { return {"C" + std::to_string(n), {rotation(n)}, n, n}; }

inline Named dihedral(std::size_t n) {
    Perm r = identity_perm(n);
    for (u32 i = 0; i < n; ++i) r[i] = (n - i) % n;
    return {"D" + std::to_string(n), {rotation(n), r}, n, 2 * n};
}

inline Named klein() { return {"V4", {from_cycles(4, {{0, 1}, {2, 3}}), from_cycles(4, {{0, 2}, {1, 3}})}, 4, 4}; }

/// S_m wr S_k acting on m * k points in k blocks of size m.
inline Named wreath_blocks(std::size_t m, std::size_t k) {
    const std::size_t n = m * k;
    std::vector<Perm> gens{cycle(n, {0, 1})};
    if (m > 2) {
        std::vector<u32> c(m);
        for (u32 i = 0; i < m; ++i) c[i] = i;
        gens.push_back(cycle(n, c));
    }
    // cycle the blocks, and swap the first two
    Perm rot = identity_perm(n), swap = identity_perm(n);
    for (u32 i = 0; i < n; ++i) rot[i] = (i + m) % n;
    for (u32 i = 0; i < m; ++i) {
        swap[i] = i + m;
        swap[i + m] = i;
    }
    gens.push_back(rot);
    if (k > 2) gens.push_back(swap);
    u64 order = fact(k);
    for (std::size_t b = 0; b < k; ++b) order *= fact(m);
    return {"S" + std::to_string(m) + "wrS" + std::to_string(k), gens, n, order};
}

inline Named wreath(std::size_t m) { return wreath_blocks(m, 2); }

/// x -> x + 1 and x -> g x on Z/p with g a primitive root.
inline Named affine(u32 p, u32 g) {
    Perm t = identity_perm(p), m = identity_perm(p);
    for (u32 i = 0; i < p; ++i) {
        t[i] = (i + 1) % p;
        m[i] = i * g % p;
    }
    return {"AGL1_" + std::to_string(p), {t, m}, p, u64(p) * (p - 1)};
}

inline std::vector<Named> corpus() {
    std::vector<Named> out;
    for (std::size_t n : {3, 5, 6, 8, 9, 11, 12}) out.push_back(symmetric(n));
    for (std::size_t n : {4, 5, 7, 9, 10, 12}) out.push_back(alternating(n));
    for (std::size_t n : {5, 7, 12}) out.push_back(cyclic(n));
    for (std::size_t n : {5, 8, 11}) out.push_back(dihedral(n));
    out.push_back(klein());
    for (std::size_t k : {3, 4, 5}) out.push_back(wreath(k));
    out.push_back(affine(7, 3));
    out.push_back(affine(11, 2));
    return out;
}

}  // namespace groups
