// The braid action is generic over the group: here it runs on quadruples
// of permutations of 5 points.

#include <algorithm>
#include <cstdio>
#include <random>

#include "charquo/braidquandle.hpp"
#include "charquo/permgrp.hpp"

using namespace charquo;

struct Sym {
    using element = Perm;
    Perm mul(const Perm& x, const Perm& y) const { return compose(x, y); }
    Perm inv(const Perm& x) const { return inverse(x); }
    bool equal(const Perm& x, const Perm& y) const { return x == y; }
};

int main() {
    std::mt19937_64 rng(5);
    auto random_perm = [&] {
        Perm p = identity_perm(5);
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    const Sym S;
    Quad<Perm> q{random_perm(), random_perm(), random_perm(), random_perm()};
    for (int k = 0; k < 4; ++k) std::printf("  %s\n", cycle_notation(q[k]).c_str());

    const BraidWord w{1, 2, -3, 2};
    const Quad<Perm> r = apply_word(S, w, q);
    std::printf("after %s:\n", word_to_string(w).c_str());
    for (int k = 0; k < 4; ++k) std::printf("  %s\n", cycle_notation(r[k]).c_str());
    std::printf("gamma preserved: %s\n", gamma(S, r) == gamma(S, q) ? "yes" : "no");
    std::printf("delta preserved: %s\n", delta(S, r) == delta(S, q) ? "yes" : "no");
    return 0;
}
