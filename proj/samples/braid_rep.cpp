// Prints the braid matrices on a highest weight space and their
// reduction mod a prime.

#include <cstdio>
#include <cstdlib>

#include "charquo/qrep.hpp"

using namespace charquo;

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 3;
    const int l = argc > 2 ? std::atoi(argv[2]) : 2;
    const RepMatrices rep = braid_matrices(n, l);
    std::printf("dim W(%d,%d) = %zu\n", n, l, rep.dim());
    for (std::size_t g = 0; g < rep.sigma.size(); ++g) {
        std::printf("sigma_%zu:\n", g + 1);
        for (std::size_t i = 0; i < rep.dim(); ++i) {
            std::printf("  [");
            for (std::size_t j = 0; j < rep.dim(); ++j)
                std::printf("%s%s", j ? ", " : "", rep.sigma[g](i, j).to_string().c_str());
            std::printf("]\n");
        }
    }
    const Specialization sp = specialize(rep, 101, 3, 5);
    std::printf("mod 101 at (q, s) = (3, 5): relations %s, absolutely irreducible %s\n",
                sp.relations ? "hold" : "fail", sp.absolutely_irreducible ? "yes" : "no");
    return 0;
}
