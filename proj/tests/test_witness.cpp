#include <gtest/gtest.h>

#include <random>

#include "charquo/witness.hpp"
#include "oracles.hpp"

using namespace charquo;

namespace {

bool relaxed_condition(u32 p) { return oracle::legendre(p, 5) == 1 && oracle::legendre(p, 13) == -1; }

const QuotientReport& pipeline19() {
    static const QuotientReport r = run_pipeline(19);
    return r;
}

}  // namespace

TEST(FindPrime, RelaxedAndStrict) {
    EXPECT_EQ(find_prime(2, PrimeMode::Relaxed), 19u);
    EXPECT_EQ(find_prime(20, PrimeMode::Relaxed), 31u);
    EXPECT_EQ(find_prime(2, PrimeMode::Strict), 271u);
    // no smaller prime qualifies
    for (u32 q = 5; q < 19; ++q)
        if (oracle::is_prime(q)) {
            EXPECT_FALSE(relaxed_condition(q) && nondegenerate(q)) << q;
        }
    for (u32 q = 20; q < 31; ++q)
        if (oracle::is_prime(q)) {
            EXPECT_FALSE(relaxed_condition(q) && nondegenerate(q)) << q;
        }
    EXPECT_TRUE(relaxed_condition(19));
    EXPECT_TRUE(relaxed_condition(31));
    EXPECT_EQ(271 % 5, 1);
    EXPECT_EQ(271 % 13, 11);
}

TEST(Build, InvariantsAndErrors) {
    for (u32 p : {19u, 31u, 271u}) {
        const WitnessConfig cfg = build(p);
        const PrimeField& F = cfg.F;
        SL2Group G{F};
        EXPECT_EQ(gamma(G, cfg.P), cfg.gamma);
        EXPECT_EQ(delta(G, cfg.P), cfg.delta);
        EXPECT_EQ(cfg.gamma, mul(F, cfg.u, cfg.w));
        for (const Mat2& m : cfg.P) EXPECT_EQ(det(F, m), 1u);
    }
    // trace of gamma is 3 = -2 mod 5
    EXPECT_THROW(build(5), ConfigError);
    EXPECT_FALSE(nondegenerate(5));
    EXPECT_THROW(build(9), ConfigError);
    EXPECT_THROW(build(3), ConfigError);
}

TEST(Assumptions, HoldAtWitnessPrimes) {
    for (u32 p : {19u, 31u, 271u}) {
        const AssumptionReport r = check_assumptions(build(p));
        EXPECT_TRUE(r.nonconj) << p;
        EXPECT_TRUE(r.unipotent_steps) << p;
        EXPECT_TRUE(r.distinct_subgroups) << p;
        EXPECT_TRUE(r.certifiable()) << p;
        ASSERT_TRUE(r.generation.has_value()) << p;
        EXPECT_TRUE(*r.generation) << p;
    }
    const AssumptionReport r19 = check_assumptions(build(19));
    EXPECT_EQ(r19.generation_method, "closure");
    const WitnessConfig c19 = build(19);
    EXPECT_EQ(r19.order_gamma, oracle::psl_order(c19.F, c19.gamma));
    EXPECT_EQ(r19.order_delta, oracle::psl_order(c19.F, c19.delta));
    EXPECT_NE(r19.class_gamma, r19.class_delta);
}

TEST(Assumptions, ClosureCapLeavesGenerationToOrderBound) {
    const AssumptionReport r = check_assumptions(build(31), 10);
    EXPECT_NE(r.generation_method, "closure");
}

TEST(ProperDecomposition, ValidAlongTheOrbit) {
    const WitnessConfig cfg = build(31);
    const Params prm = params_of(cfg);
    SL2Group G{cfg.F};
    std::mt19937_64 rng(3);
    const int letters[] = {1, -1, 2, -2, 3, -3};
    Quad<Mat2> q = cfg.P;
    for (int it = 0; it < 300; ++it) {
        for (Foliation f : {Foliation::First, Foliation::Second}) {
            ProperDecomposition d = proper_decomposition(q, f, prm);
            ASSERT_TRUE(d.valid);
            EXPECT_EQ(trace(cfg.F, d.x), trace(cfg.F, d.y));
            EXPECT_EQ(trace(cfg.F, d.z), trace(cfg.F, d.w));
        }
        q = apply_letter(G, letters[rng() % 6], q);
    }
}

TEST(ProperDecomposition, FirstFoliationIsInvariantUnderSigma1AndSigma3) {
    const WitnessConfig cfg = build(19);
    const Params prm = params_of(cfg);
    SL2Group G{cfg.F};
    const ProperDecomposition d = proper_decomposition(cfg.P, Foliation::First, prm);
    for (int l : {1, 3, -1, -3}) {
        const ProperDecomposition e = proper_decomposition(apply_letter(G, l, cfg.P), Foliation::First, prm);
        EXPECT_EQ(decomposition_key(d.x, d.y, d.z, d.w, prm), decomposition_key(e.x, e.y, e.z, e.w, prm)) << l;
    }
}

TEST(UnipotentDecompositions, UniqueClassContainingWitness) {
    const WitnessConfig cfg = build(31);
    const Params prm = params_of(cfg);
    const auto classes = unipotent_decompositions(prm);
    ASSERT_EQ(classes.size(), 1u);
    EXPECT_TRUE(same_decomposition_class(proper_decomposition(cfg.P, Foliation::First, prm), classes[0], prm));
    const auto& s = classes[0].sample;
    EXPECT_EQ(mul(cfg.F, s.x, s.z), cfg.gamma);
    EXPECT_EQ(mul(cfg.F, s.w, s.y), adj(cfg.F, cfg.delta));
}

TEST(CountX, MatchesMatrixEnumeration) {
    const Params prm = params_of(build(19));
    const u64 n = count_X(prm);
    EXPECT_EQ(n, oracle::exact_count_X(prm));
    EXPECT_GE(n, 19u);
}

TEST(CountX, RefusesLargePrimes) {
    const u32 p = find_prime(62, PrimeMode::Relaxed);
    EXPECT_THROW(count_X(params_of(build(p))), std::length_error);
}

TEST(KeyAgreement, HoldsAt19) {
    const WitnessConfig cfg = build(19);
    const Params prm = params_of(cfg);
    const KeyAgreement k = verify_key_agreement(enumerate(cfg.P, prm), prm);
    EXPECT_TRUE(k.injective);
    EXPECT_TRUE(k.closed);
}

TEST(Pipeline, CertifiesAt19) {
    const QuotientReport& r = pipeline19();
    ASSERT_EQ(r.status, PipelineStatus::Ok) << r.error;
    EXPECT_EQ(r.stage, "done");
    ASSERT_TRUE(r.x_count.has_value());
    EXPECT_EQ(r.n, *r.x_count);
    EXPECT_EQ(r.key_mode, "trace+exact");
    EXPECT_TRUE(r.cycle_orders_ok);
    EXPECT_TRUE(r.all_sigma1_types);
    EXPECT_TRUE(r.x_nontrivial);
    EXPECT_EQ(r.generator_signs.at("x"), 1);
    EXPECT_TRUE(r.classification == GiantClass::Alternating || r.classification == GiantClass::Symmetric);
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_TRUE(validate_certificate(r.generators, *r.certificate));
    EXPECT_TRUE(r.certified());
    // the classification follows the signs of the generators
    bool all_even = true;
    for (const auto& g : r.generators) all_even = all_even && sign(g) == 1;
    EXPECT_EQ(r.classification == GiantClass::Alternating, all_even);
}

TEST(Pipeline, IndependentOfThreadCount) {
    PipelineOptions opt;
    opt.threads = 2;
    opt.count = false;
    const QuotientReport r = run_pipeline(19, opt);
    ASSERT_EQ(r.status, PipelineStatus::Ok) << r.error;
    ASSERT_TRUE(r.certificate && pipeline19().certificate);
    EXPECT_EQ(r.certificate->word, pipeline19().certificate->word);
    EXPECT_EQ(r.generators, pipeline19().generators);
}

TEST(Pipeline, FailureStatuses) {
    PipelineOptions small;
    small.max_points = 100;
    const QuotientReport b = run_pipeline(19, small);
    EXPECT_EQ(b.status, PipelineStatus::Budget);
    EXPECT_EQ(b.n, 100u);
    EXPECT_EQ(exit_code(b.status), 2);

    const QuotientReport d = run_pipeline(5);
    EXPECT_EQ(d.status, PipelineStatus::Precondition);
    EXPECT_EQ(d.stage, "build");
    EXPECT_FALSE(d.certified());

    const WitnessConfig cfg = build(19);
    Quad<Mat2> wrong = cfg.P;
    wrong[3] = identity_mat();
    const QuotientReport w = run_pipeline(19, {}, wrong);
    EXPECT_EQ(w.status, PipelineStatus::Precondition);
    EXPECT_EQ(w.stage, "enumerate");
}
