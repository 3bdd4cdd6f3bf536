#include <gtest/gtest.h>

#include <climits>
#include <random>

#include "charquo/laurent.hpp"

using namespace charquo;

namespace {

const PrimeField kF(1000003);

LP random_poly(std::mt19937_64& rng, int terms = 5, int span = 4) {
    std::uniform_int_distribution<int> e(-span, span);
    std::uniform_int_distribution<int> c(-9, 9);
    LP r;
    for (int i = 0; i < terms; ++i) r += LP::monomial(c(rng), e(rng), e(rng));
    return r;
}

std::pair<u32, u32> random_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<u32> U(1, kF.p() - 1);
    return {U(rng), U(rng)};
}

// determinant mod p by cofactor expansion
u32 det_mod(const ModMatrix& m) {
    const std::size_t n = m.rows;
    if (n == 1) return m(0, 0);
    u32 acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        ModMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        u32 t = kF.mul(m(0, j), det_mod(minor));
        acc = j % 2 ? kF.sub(acc, t) : kF.add(acc, t);
    }
    return acc;
}

}  // namespace

TEST(Laurent, RingOperationsCommuteWithEvaluation) {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 500; ++it) {
        LP x = random_poly(rng), y = random_poly(rng);
        auto [q0, s0] = random_point(rng);
        const u32 a = x.eval(kF, q0, s0), b = y.eval(kF, q0, s0);
        EXPECT_EQ((x + y).eval(kF, q0, s0), kF.add(a, b));
        EXPECT_EQ((x - y).eval(kF, q0, s0), kF.sub(a, b));
        EXPECT_EQ((x * y).eval(kF, q0, s0), kF.mul(a, b));
        EXPECT_EQ(x.pow(3).eval(kF, q0, s0), kF.pow(a, 3));
        EXPECT_EQ(x.bar().eval(kF, q0, s0), x.eval(kF, kF.inv(q0), kF.inv(s0)));
        EXPECT_EQ(x.bar().bar(), x);
        EXPECT_TRUE((x - x).is_zero());
    }
}

TEST(Laurent, TermsStaySortedWithoutZeros) {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 200; ++it) {
        LP x = random_poly(rng) * random_poly(rng) - random_poly(rng);
        const auto& t = x.terms();
        for (std::size_t i = 0; i < t.size(); ++i) {
            EXPECT_NE(t[i].c, 0);
            if (i) {
                EXPECT_LT(t[i - 1].m, t[i].m);
            }
        }
    }
}

TEST(Laurent, DivideExact) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 300; ++it) {
        LP x = random_poly(rng), y = random_poly(rng);
        if (y.is_zero()) continue;
        auto q = (x * y).divide_exact(y);
        ASSERT_TRUE(q.has_value());
        EXPECT_EQ(*q, x);
    }
    const LP q = LP::q(), one(1);
    EXPECT_FALSE((q + one).divide_exact(q - one).has_value());
    EXPECT_FALSE(LP(3).divide_exact(LP(2)).has_value());
    EXPECT_EQ(*LP::q(5).divide_exact(LP::q(-2)), LP::q(7));
    // q^2 - q^-2 = (q - q^-1)(q + q^-1)
    EXPECT_EQ(*(LP::q(2) - LP::q(-2)).divide_exact(q - LP::q(-1)), q + LP::q(-1));
    EXPECT_THROW(q.divide_exact(LP{}), std::domain_error);
}

TEST(Laurent, ToStringAndErrors) {
    EXPECT_EQ(LP{}.to_string(), "0");
    EXPECT_EQ((LP::q(2) - LP::monomial(3, 0, -1) + LP(1)).to_string(), "q^2 + 1 - 3*s^-1");
    EXPECT_THROW(LP::q().eval(kF, 0, 1), std::domain_error);
    EXPECT_THROW(LP(3).div_int(2), std::domain_error);
    EXPECT_THROW(LP(LLONG_MAX) * LP(2), std::overflow_error);
}

TEST(Rational, FieldOperationsCommuteWithEvaluation) {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 300; ++it) {
        LP a = random_poly(rng, 3, 2), b = random_poly(rng, 3, 2), c = random_poly(rng, 3, 2),
           d = random_poly(rng, 3, 2);
        if (b.is_zero() || d.is_zero() || c.is_zero()) continue;
        auto [q0, s0] = random_point(rng);
        if (b.eval(kF, q0, s0) == 0 || d.eval(kF, q0, s0) == 0 || c.eval(kF, q0, s0) == 0) continue;
        RationalFn2 x(a, b), y(c, d);
        const u32 xv = kF.div(a.eval(kF, q0, s0), b.eval(kF, q0, s0));
        const u32 yv = kF.div(c.eval(kF, q0, s0), d.eval(kF, q0, s0));
        EXPECT_EQ((x + y).eval(kF, q0, s0), kF.add(xv, yv));
        EXPECT_EQ((x * y).eval(kF, q0, s0), kF.mul(xv, yv));
        EXPECT_EQ((x / y).eval(kF, q0, s0), kF.div(xv, yv));
        EXPECT_EQ(x - x, RationalFn2(0));
    }
}

TEST(Rational, ReducesToLaurentWhenExact) {
    const LP q = LP::q();
    RationalFn2 r(q * q - LP(1), q - LP(1));
    EXPECT_EQ(r.den(), LP(1));
    EXPECT_EQ(*r.as_laurent(), q + LP(1));
    RationalFn2 h(LP(2), LP(4) * q);
    EXPECT_EQ(h.den(), LP(2));
    EXPECT_EQ(h.num(), LP::q(-1));
    EXPECT_FALSE(RationalFn2(LP(1), q + LP(1)).as_laurent().has_value());
    EXPECT_THROW(RationalFn2(LP(1), LP{}), std::domain_error);
    EXPECT_THROW(RationalFn2(1) / RationalFn2(0), std::domain_error);
}

TEST(Matrix, DetAdjugateMatchesCofactorExpansion) {
    std::mt19937_64 rng(5);
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
        for (int it = 0; it < 10; ++it) {
            LMatrix m(n, n);
            for (auto& x : m.a) x = random_poly(rng, 2, 1);
            const DetAdj da = det_adjugate(m);
            auto [q0, s0] = random_point(rng);
            EXPECT_EQ(da.det.eval(kF, q0, s0), det_mod(specialize(kF, m, q0, s0)));
            if (!da.det.is_zero()) {
                EXPECT_EQ(m * da.adj, LMatrix::identity(n).scaled(da.det));
                EXPECT_EQ(da.adj * m, LMatrix::identity(n).scaled(da.det));
            }
        }
    }
    LMatrix sing(2, 2);
    sing(0, 0) = LP::q();
    sing(0, 1) = LP::s();
    sing(1, 0) = LP::q(2);
    sing(1, 1) = LP::q() * LP::s();
    EXPECT_TRUE(det_adjugate(sing).det.is_zero());
}

TEST(Matrix, ModArithmetic) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<u32> U(0, kF.p() - 1);
    for (int it = 0; it < 20; ++it) {
        ModMatrix m(4, 4);
        for (auto& x : m.a) x = U(rng);
        auto inv = mod_inverse(kF, m);
        ASSERT_EQ(inv.has_value(), det_mod(m) != 0);
        if (inv) {
            EXPECT_EQ(mod_mul(kF, m, *inv).scalar_value(), std::optional<u32>(1));
            EXPECT_EQ(mod_rank(kF, m), 4u);
        }
        ModMatrix s = m;
        for (auto& x : s.a) x = kF.mul(x, 7);
        EXPECT_TRUE(mod_proportional(kF, s, m));
    }
    ModMatrix r(3, 3);
    r(0, 0) = 1, r(1, 1) = 1, r(2, 0) = 5, r(2, 1) = 5;
    EXPECT_EQ(mod_rank(kF, r), 2u);
    EXPECT_FALSE(mod_inverse(kF, r).has_value());
}

TEST(Matrix, ProportionalAndBar) {
    LMatrix a(2, 2);
    a(0, 0) = LP::q();
    a(1, 1) = LP::s(-1);
    const LMatrix b = a.scaled(LP::q(3) + LP(2));
    EXPECT_TRUE(proportional(b, a));
    EXPECT_FALSE(proportional(b, bar(a)));
    EXPECT_EQ(bar(bar(a)), a);
    EXPECT_FALSE(proportional(a, LMatrix(2, 2)));
}
