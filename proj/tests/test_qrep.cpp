#include <gtest/gtest.h>

#include <vector>

#include "charquo/qrep.hpp"

using namespace charquo;

namespace {

const PrimeField kF(1000003);

u64 pascal(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::vector<u64>> t(n + 1);
    for (int i = 0; i <= n; ++i) {
        t[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t[n][k];
}

u64 count_compositions(int n, int l) {
    if (n == 1) return 1;
    u64 c = 0;
    for (int v = 0; v <= l; ++v) c += count_compositions(n - 1, l - v);
    return c;
}

}  // namespace

TEST(QNumbers, ClassicalLimitAndExamples) {
    EXPECT_EQ(qnum(0), LP{});
    EXPECT_EQ(qnum(2), LP::q() + LP::q(-1));
    EXPECT_EQ(qbinom(4, 2), LP::q(4) + LP::q(2) + LP(2) + LP::q(-2) + LP::q(-4));
    for (int n = 0; n <= 8; ++n) {
        EXPECT_EQ(qnum(n).eval(kF, 1, 5), u32(n));
        EXPECT_EQ(qnum(n).bar(), qnum(n));
        for (int k = 0; k <= n; ++k) EXPECT_EQ(qbinom(n, k).eval(kF, 1, 7), pascal(n, k)) << n << " " << k;
    }
    EXPECT_THROW(qnum(-1), std::invalid_argument);
    EXPECT_THROW(qbinom(2, 3), std::invalid_argument);
}

TEST(QNumbers, PascalRecurrences) {
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k < n; ++k) {
            EXPECT_EQ(qbinom(n, k), LP::q(-k) * qbinom(n - 1, k) + LP::q(n - k) * qbinom(n - 1, k - 1));
            EXPECT_EQ(qbinom(n, k), LP::q(k) * qbinom(n - 1, k) + LP::q(k - n) * qbinom(n - 1, k - 1));
        }
}

TEST(QNumbers, BinomialProductIdentity) {
    for (int t = 0; t <= 6; ++t) EXPECT_TRUE(qbinom_identity_check(t)) << t;
}

TEST(Module, DefiningRelations) {
    const ModuleRelations r = module_relations(6);
    EXPECT_TRUE(r.ke);
    EXPECT_TRUE(r.e_f);
}

TEST(Module, BasisSizes) {
    for (int n = 1; n <= 5; ++n)
        for (int l = 0; l <= 4; ++l) EXPECT_EQ(weight_basis(n, l).size(), count_compositions(n, l));
    EXPECT_THROW(weight_basis(0, 1), std::invalid_argument);
}

TEST(Module, YangBaxterOnThreeFactors) {
    for (int l = 0; l <= 4; ++l) {
        const WeightBasis V = weight_basis(3, l);
        const LMatrix a = sigma_on_V(V, 1), b = sigma_on_V(V, 2);
        EXPECT_EQ(a * b * a, b * a * b) << l;
    }
}

TEST(Module, FarCommutationOnFourFactors) {
    const WeightBasis V = weight_basis(4, 2);
    EXPECT_EQ(sigma_on_V(V, 1) * sigma_on_V(V, 3), sigma_on_V(V, 3) * sigma_on_V(V, 1));
    EXPECT_THROW(sigma_on_V(V, 4), std::invalid_argument);
}

TEST(HighestWeight, DimensionsAndKernel) {
    for (int n = 2; n <= 5; ++n)
        for (int l = 0; l <= 3; ++l) {
            const RepMatrices r = braid_matrices(n, l);
            EXPECT_EQ(r.dim(), pascal(n + l - 2, l)) << n << " " << l;
            if (l >= 1) {
                EXPECT_TRUE((e_matrix(r.W.V, weight_basis(n, l - 1)) * r.W.B).is_zero());
            }
            EXPECT_TRUE(braid_relations_hold(r.sigma));
        }
}

TEST(HighestWeight, TwoStrandEigenvalue) {
    for (int l = 0; l <= 4; ++l) {
        const RepMatrices r = braid_matrices(2, l);
        ASSERT_EQ(r.dim(), 1u);
        const LP expect = LP::monomial(l % 2 ? -1 : 1, l * (l - 1), -2 * l);
        EXPECT_EQ(r.sigma[0](0, 0), expect) << l;
        EXPECT_EQ(w2_eigenvalue_formula(l), expect);
    }
}

TEST(HighestWeight, Decomposition) {
    for (int n = 3; n <= 5; ++n)
        for (int l = 1; l <= 3; ++l) {
            const DecompositionCheck d = decomposition_check(braid_matrices(n, l));
            EXPECT_TRUE(d.binomial_ok);
            EXPECT_TRUE(d.filtration_ok);
            for (int k = 0; k <= l; ++k) EXPECT_EQ(d.block_dims[k], pascal(n + k - 3, k));
        }
    EXPECT_THROW(decomposition_check(braid_matrices(2, 1)), std::invalid_argument);
}

TEST(Hermitian, IdentitiesOnV41) {
    const WeightBasis V = weight_basis(4, 1);
    std::vector<LMatrix> sig;
    for (int i = 1; i < 4; ++i) sig.push_back(sigma_on_V(V, i));
    const LMatrix H = hermitian_form(V);
    EXPECT_TRUE(hermitian_identities(sig, H));
    EXPECT_TRUE(bar_symmetry(V, sig));
    // the integral form is the exact one times a fixed scale
    const RMatrix He = hermitian_form_exact(V);
    const RationalFn2 scale(hermitian_scale(4, 1));
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = 0; j < V.size(); ++j) EXPECT_EQ(RationalFn2(H(i, j)), He(i, j) * scale);
}

TEST(Hermitian, SpecializationRejectsVanishingDenominators) {
    const WeightBasis V = weight_basis(3, 2);
    EXPECT_NO_THROW(specialize_hermitian(V, 1009, 3, 5));
    EXPECT_THROW(specialize_hermitian(V, 1009, 3, 1), BadSpecialization);
}

TEST(Verify, SmallCasesPass) {
    for (auto [n, l] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 1}, std::pair{5, 1}, std::pair{3, 0}}) {
        const QrepVerification v = verify_rep(braid_matrices(n, l));
        for (const auto& c : v.checks) EXPECT_TRUE(c.pass) << n << "," << l << " " << c.name << " " << c.detail;
    }
}

TEST(Verify, IntertwinerOn41) {
    const RepMatrices r = braid_matrices(4, 1);
    const Intertwiner J = intertwiner_J(r);
    for (const auto& s : r.sigma) EXPECT_EQ(J.J * s.transpose(), s * J.J);
    EXPECT_TRUE(J.nonsingular);
    EXPECT_NE(J.symmetry, 0);
    EXPECT_TRUE(phi_inverts_generators(r, J));
    EXPECT_EQ(intertwiner_generic_rank(r) + 1, r.dim() * r.dim());
}

TEST(Specialize, FourTwoAtSmallPrime) {
    const RepMatrices r = braid_matrices(4, 2);
    const Specialization sp = specialize(r, 1009, 3, 5);
    EXPECT_TRUE(sp.relations);
    EXPECT_TRUE(sp.sigma1_ne_sigma3);
    EXPECT_TRUE(sp.x_nonscalar);
    EXPECT_TRUE(sp.absolutely_irreducible);
    const PrimeField F(1009);
    for (std::size_t i = 0; i < r.sigma.size(); ++i)
        for (std::size_t k = 0; k < r.sigma[i].a.size(); ++k)
            EXPECT_EQ(sp.sigma[i].a[k], r.sigma[i].a[k].eval(F, 3, 5));
}

TEST(Specialize, Errors) {
    const RepMatrices r = braid_matrices(3, 1);
    EXPECT_THROW(specialize(r, 1000, 3, 5), std::invalid_argument);
    EXPECT_THROW(specialize(r, 1009, 1009, 5), BadSpecialization);
    EXPECT_THROW(specialize(r, 1009, 3, 0), BadSpecialization);
}
