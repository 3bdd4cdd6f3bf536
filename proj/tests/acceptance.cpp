// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "charquo/braidquandle.hpp"
#include "charquo/charvar.hpp"
#include "charquo/orbit.hpp"
#include "charquo/permgrp.hpp"
#include "charquo/qrep.hpp"
#include "charquo/witness.hpp"
#include "groups.hpp"
#include "oracles.hpp"

using namespace charquo;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

int failures = 0;

void run(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && limit_s > 0 && secs > limit_s) {
        o.ok = false;
        o.note = "time limit " + std::to_string(limit_s) + " s exceeded";
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                o.note.empty() ? "" : " - ", o.note.c_str());
    std::fflush(stdout);
}

Quad<Mat2> random_quad(const PrimeField& F, std::mt19937_64& rng) {
    return {random_sl2(F, rng), random_sl2(F, rng), random_sl2(F, rng), random_sl2(F, rng)};
}

void identities(Outcome& o) {
    PSL2Group G{PrimeField(1009)};
    std::mt19937_64 rng(1009);
    const BraidWord inner = power_word({2, 3, 1}, 2);
    for (int it = 0; it < 1000; ++it) {
        const Quad<Mat2> q = random_quad(G.F, rng);
        const Mat2 a = q[0], b = q[1], c = q[2], x = random_sl2(G.F, rng);
        o.require(G.equal(triangle(G, a, a), a), "idempotence");
        o.require(G.equal(triangle(G, a, triangle(G, b, c)), triangle(G, triangle(G, a, b), triangle(G, a, c))),
                  "self-distributivity");
        o.require(G.equal(triangle(G, G.mul(x, a), G.mul(x, b)), G.mul(x, triangle(G, a, b))), "left equivariance");
        o.require(G.equal(triangle(G, G.mul(a, x), G.mul(b, x)), G.mul(triangle(G, a, b), x)), "right equivariance");
        o.require(quad_equal(G, apply_word(G, {1, 2, 1}, q), apply_word(G, {2, 1, 2}, q)), "braid 121");
        o.require(quad_equal(G, apply_word(G, {2, 3, 2}, q), apply_word(G, {3, 2, 3}, q)), "braid 232");
        o.require(quad_equal(G, apply_word(G, {1, 3}, q), apply_word(G, {3, 1}, q)), "braid 13");
        for (int l : {1, -1, 2, -2, 3, -3}) {
            const Quad<Mat2> r = apply_letter(G, l, q);
            o.require(G.equal(gamma(G, r), gamma(G, q)) && G.equal(delta(G, r), delta(G, q)), "gamma/delta invariance");
        }
        center_image(G, q);  // throws on mismatch
        for (int l : {1, 2, 3})
            o.require(quad_equal(G, epsilon(apply_letter(G, l, epsilon(q))), apply_letter(G, -(4 - l), q)),
                      "epsilon relation");
        for (auto [from, to] : {std::pair{1, 3}, std::pair{3, 1}, std::pair{2, 2}})
            o.require(quad_equal(G, apply_word(G, concat(concat(inverse_word(inner), {from}), inner), q),
                                 apply_letter(G, to, q)),
                      "inner identity");
    }
}

void appendix(Outcome& o) {
    const PrimeField F(101);
    SL2Group G{F};
    std::mt19937_64 rng(101);
    for (int it = 0; it < 1000; ++it) {
        const Quad<Mat2> q = random_quad(F, rng);
        const TraceTuple t = from_quad(F, q);
        o.require(fricke_check(F, t), "Fricke on a matrix-derived tuple");
        for (int l : {1, -1, 2, -2, 3, -3}) {
            const TraceTuple img = from_quad(F, apply_letter(G, l, q));
            o.require(fricke_check(F, img), "Fricke on an image tuple");
            o.require(canonicalize(F, sigma_action(F, l, t)) == canonicalize(F, img), "polynomial vs matrix action");
        }
    }
}

void key_agreement(Outcome& o) {
    for (u32 p : {19u, 31u}) {
        const WitnessConfig cfg = build(p);
        const Params prm = params_of(cfg);
        const KeyAgreement k = verify_key_agreement(enumerate(cfg.P, prm), prm);
        o.require(k.injective, "p = " + std::to_string(p) + ": distinct trace keys collide exactly");
        o.require(k.closed, "p = " + std::to_string(p) + ": equal trace keys are inequivalent");
    }
}

void counting(Outcome& o) {
    const Params prm = params_of(build(19));
    const u64 fast = count_X(prm), exact = oracle::exact_count_X(prm);
    o.require(fast == exact, "count_X " + std::to_string(fast) + " vs enumeration " + std::to_string(exact));
    o.note = o.ok ? "count " + std::to_string(fast) : o.note;
}

void pipeline(Outcome& o) {
    PipelineOptions opt;
    opt.seed = 7;
    const QuotientReport r = run_pipeline(19, opt);
    o.require(r.status == PipelineStatus::Ok, "pipeline status: " + r.error);
    if (!o.ok) return;
    o.require(r.cycle_orders_ok, "cycle lengths vs matrix orders");
    o.require(r.all_sigma1_types, "sigma_1 element types");
    o.require(r.certificate.has_value() && validate_certificate(r.generators, *r.certificate), "giant certificate");
    o.require(r.classification == GiantClass::Alternating || r.classification == GiantClass::Symmetric,
              "classification");
    o.require(r.x_nontrivial && r.generator_signs.at("x") == 1, "x nontrivial and even");
    o.require(r.certified(), "report not certified");
    if (o.ok) o.note = "n = " + std::to_string(r.n) + ", " + to_string(r.classification) + ", " + r.f2_verdict;
}

void unipotent(Outcome& o) {
    const WitnessConfig cfg = build(31);
    const Params prm = params_of(cfg);
    const auto classes = unipotent_decompositions(prm);
    o.require(classes.size() == 1, std::to_string(classes.size()) + " classes");
    if (!o.ok) return;
    o.require(same_decomposition_class(proper_decomposition(cfg.P, Foliation::First, prm), classes[0], prm),
              "witness decomposition not in the class");
}

void primitivity(Outcome& o) {
    const WitnessConfig cfg = build(19);
    const OrbitIndex O = enumerate(cfg.P, params_of(cfg));
    const std::vector<Perm> gens{perm_of({1}, O), perm_of({2}, O), perm_of({3}, O)};
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<u32> U(1, static_cast<u32>(O.size() - 1));
    for (int it = 0; it < 100; ++it) {
        const u32 beta = U(rng);
        o.require(minimal_block(gens, 0, beta, O.size()).trivial(), "nontrivial block through 0 and " +
                                                                        std::to_string(beta));
    }
}

void quantum(Outcome& o) {
    for (int n = 2; n <= 5; ++n)
        for (int l = 0; l <= 3; ++l) {
            const RepMatrices r = braid_matrices(n, l);
            const std::string tag = "(" + std::to_string(n) + "," + std::to_string(l) + ")";
            o.require(r.dim() == binomial(n + l - 2, l), "dimension " + tag);
            o.require(braid_relations_hold(r.sigma), "braid relations " + tag);
            if (n >= 3 && l >= 1) {
                const DecompositionCheck d = decomposition_check(r);
                o.require(d.binomial_ok && d.filtration_ok, "decomposition " + tag);
            }
        }
    for (int l = 0; l <= 4; ++l) {
        const RepMatrices r = braid_matrices(2, l);
        o.require(r.sigma[0](0, 0) == LP::monomial(l % 2 ? -1 : 1, l * (l - 1), -2 * l),
                  "two-strand eigenvalue at l = " + std::to_string(l));
    }
    for (int t = 0; t <= 6; ++t) o.require(qbinom_identity_check(t), "q-binomial identity t = " + std::to_string(t));
    for (int l = 0; l <= 4; ++l) {
        const WeightBasis V = weight_basis(3, l);
        const LMatrix a = sigma_on_V(V, 1), b = sigma_on_V(V, 2);
        o.require(a * b * a == b * a * b, "Yang-Baxter on V(3," + std::to_string(l) + ")");
    }
    {
        const WeightBasis V = weight_basis(4, 1);
        std::vector<LMatrix> sig;
        for (int i = 1; i < 4; ++i) sig.push_back(sigma_on_V(V, i));
        o.require(hermitian_identities(sig, hermitian_form(V)), "hermitian identities on V(4,1)");
    }
    for (auto [n, l] : {std::pair{4, 1}, std::pair{4, 2}}) {
        const QrepVerification v = verify_rep(braid_matrices(n, l), true);
        for (const char* name : {"J_intertwines", "J_nonsingular", "phi_squared_scalar", "phi_inverts_sigma", "J_unique"}) {
            bool found = false;
            for (const auto& c : v.checks)
                if (c.name == name) {
                    found = true;
                    o.require(c.pass, std::string(name) + " at (" + std::to_string(n) + "," + std::to_string(l) + ")");
                }
            o.require(found, std::string(name) + " not run");
        }
    }
}

void specialization(Outcome& o) {
    const RepMatrices r = braid_matrices(4, 2);
    specialize_hermitian(r.W.V, 1009, 3, 5);  // denominator check, throws on failure
    const Specialization sp = specialize(r, 1009, 3, 5);
    o.require(sp.relations, "braid relations over F_1009");
    o.require(sp.sigma1_ne_sigma3, "sigma_1 and sigma_3 projectively equal");
    o.require(sp.x_nonscalar, "sigma_1 sigma_3^-1 scalar");
    if (o.ok) o.note = std::string("absolutely irreducible: ") + (sp.absolutely_irreducible ? "yes" : "no") +
                       "; surjectivity not checked";
}

void giants(Outcome& o) {
    const auto corpus = groups::corpus();
    o.require(corpus.size() >= 20, "corpus too small");
    for (const auto& g : corpus) {
        o.require(g.n <= 12, g.name + " degree");
        const BigInt ord = schreier_sims(g.gens, g.n).order(), full = factorial(g.n);
        const GiantClass expect =
            ord == full ? GiantClass::Symmetric : (ord * 2 == full ? GiantClass::Alternating : GiantClass::Inconclusive);
        const GiantVerdict v = classify_giant(g.gens, g.n);
        o.require(v.cls == expect, g.name + ": " + to_string(v.cls) + " vs " + to_string(expect));
    }
    if (o.ok) o.note = std::to_string(corpus.size()) + " groups";
}

}  // namespace

int main() {
    run(1, "algebraic identities over PSL2(1009)", 10, identities);
    run(2, "trace-coordinate action vs matrix action at p = 101", 0, appendix);
    run(3, "trace key and exact key partitions agree at p = 19, 31", 0, key_agreement);
    run(4, "count_X matches full enumeration at p = 19", 60, counting);
    run(5, "witness pipeline at p = 19, seed 7", 300, pipeline);
    run(6, "unique unipotent decomposition class at p = 31", 60, unipotent);
    run(7, "primitivity spot check at p = 19", 0, primitivity);
    run(8, "quantum representation identities", 120, quantum);
    run(9, "specialization of (4,2) at r = 1009, (q0, s0) = (3, 5)", 0, specialization);
    run(10, "classify_giant agrees with Schreier-Sims", 0, giants);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
