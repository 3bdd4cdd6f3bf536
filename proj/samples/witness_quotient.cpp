// Builds the witness orbit at a small prime and prints the permutation
// group it generates, with the certificate that it contains A_n.

#include <cstdio>
#include <cstdlib>

#include "charquo/orbit.hpp"
#include "charquo/permgrp.hpp"
#include "charquo/witness.hpp"

using namespace charquo;

int main(int argc, char** argv) {
    const u32 p = argc > 1 ? static_cast<u32>(std::atoi(argv[1])) : 19;
    const WitnessConfig cfg = build(p);
    const Params prm = params_of(cfg);

    const OrbitIndex orbit = enumerate(cfg.P, prm);
    std::printf("p = %u, orbit size %zu\n", p, orbit.size());

    std::vector<Perm> gens;
    for (int i = 1; i <= 3; ++i) gens.push_back(perm_of({i}, orbit));
    gens.push_back(epsilon_perm(orbit, prm));
    const char* names[] = {"sigma1", "sigma2", "sigma3", "epsilon"};
    for (int i = 0; i < 4; ++i) std::printf("  %-8s sign %+d\n", names[i], sign(gens[i]));

    const GiantVerdict v = classify_giant(gens, orbit.size());
    std::printf("classification: %s (%s)\n", to_string(v.cls), v.method.c_str());
    if (v.certificate)
        std::printf("  word of length %zu has a %llu-cycle\n", v.certificate->word.size(),
                    static_cast<unsigned long long>(v.certificate->q));

    const F2Perms f = f2_perms(orbit);
    std::printf("x = s1 s3^-1: %s, sign %+d\n", is_identity(f.x) ? "trivial" : "nontrivial", sign(f.x));
    return 0;
}
