#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidquandle.hpp"
#include "charvar.hpp"
#include "ffield.hpp"
#include "orbit.hpp"
#include "permgrp.hpp"

namespace charquo {

enum class PrimeMode { Strict, Relaxed };

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct WitnessConfig {
    PrimeField F;
    Mat2 u, v, w;
    Mat2 gamma, delta;
    Quad<Mat2> P;
};

/// Throws ConfigError when gamma or delta degenerates mod p.
inline WitnessConfig build(u32 p) {
    if (p < 5 || !is_prime_u64(p)) throw ConfigError("build: p must be a prime >= 5");
    PrimeField F(p);
    Mat2 u = make_mat(F, 1, 0, 1, 1);
    Mat2 v = make_mat(F, 1, 1, 0, 1);
    Mat2 w = make_mat(F, -1, 1, -4, 3);
    Mat2 gm = mul(F, u, w);
    Mat2 dl = adj(F, mul(F, mul(F, u, v), mul(F, w, adj(F, v))));
    for (auto [name, m] : {std::pair{"gamma", gm}, std::pair{"delta", dl}}) {
        ElementClass c = classify(F, m);
        if (c == ElementClass::Identity || c == ElementClass::Involution || c == ElementClass::Unipotent)
            throw ConfigError(std::string("build: ") + name + " is " + to_string(c) + " mod " + std::to_string(p));
    }
    const Mat2 ui = adj(F, u), vi = adj(F, v), wi = adj(F, w);
    Quad<Mat2> P{identity_mat(), ui, mul(F, vi, ui), mul(F, mul(F, wi, vi), ui)};
    SL2Group G{F};
    if (gamma(G, P) != gm || delta(G, P) != dl) throw std::logic_error("build: witness point has wrong invariants");
    return {F, u, v, w, gm, dl, P};
}

inline bool nondegenerate(u32 p) {
    try {
        build(p);
        return true;
    } catch (const ConfigError&) {
        return false;
    }
}

/// Strict: p = 1 mod 5 and p = -2 mod 13.  Relaxed: 5 a square, 13 not.
inline u32 find_prime(u64 min, PrimeMode mode) {
    for (u64 p = std::max<u64>(min, 5);; ++p) {
        if (!is_prime_u64(p)) continue;
        if (mode == PrimeMode::Strict) {
            if (p % 5 != 1 || p % 13 != 11) continue;
        } else {
            PrimeField F(static_cast<u32>(p));
            if (F.legendre(5) != 1 || F.legendre(13) != -1) continue;
        }
        if (nondegenerate(static_cast<u32>(p))) return static_cast<u32>(p);
    }
}

inline Params params_of(const WitnessConfig& cfg) { return Params(cfg.F, cfg.gamma, cfg.delta); }

// ---------------------------------------------------------------------------
// assumptions

struct AssumptionReport {
    std::string class_gamma, class_delta;
    bool nonconj = false;  // gamma, delta semisimple of opposite types

    bool unipotent_steps = false;    // AB^-1, BC^-1, CD^-1 all unipotent
    bool distinct_subgroups = false;  // ... with pairwise distinct fixed points
    bool point_assumption = false;

    u64 order_gamma = 0, order_delta = 0;
    bool large_orders = false;  // one order exceeds 60

    std::optional<bool> generation;  // <gamma, delta> = PSL2, when decided
    std::string generation_method;

    bool certifiable() const { return nonconj && point_assumption; }
};

namespace detail {
// Fixed point of a non-identity unipotent on P^1, as a normalized vector.
inline std::pair<u32, u32> unipotent_fixed_point(const PrimeField& F, const Mat2& m) {
    // kernel of m - tr/2 I
    u32 h = F.div(trace(F, m), 2);
    u32 a = F.sub(m.a, h), b = m.b, c = m.c;
    std::pair<u32, u32> v = (a || b) ? std::pair{F.neg(b), a} : std::pair{F.sub(m.d, h), F.neg(c)};
    if (v.first) return {1, F.div(v.second, v.first)};
    return {0, 1};
}

inline std::optional<bool> generates_psl2(const PrimeField& F, const Mat2& x, const Mat2& y, std::size_t cap) {
    const u64 full = (u64)F.p() * ((u64)F.p() * F.p() - 1) / 2;
    if (full > cap) return std::nullopt;
    std::set<Mat2> seen{canon(F, identity_mat())};
    std::vector<Mat2> stack{canon(F, identity_mat())};
    const Mat2 g[2] = {canon(F, x), canon(F, y)};
    while (!stack.empty()) {
        Mat2 m = stack.back();
        stack.pop_back();
        for (const Mat2& s : g) {
            Mat2 r = canon(F, mul(F, m, s));
            if (seen.insert(r).second) stack.push_back(r);
        }
    }
    return seen.size() == full;
}
}  // namespace detail

inline AssumptionReport check_assumptions(const WitnessConfig& cfg, std::size_t generation_cap = 2'000'000) {
    const PrimeField& F = cfg.F;
    AssumptionReport r;
    ElementClass cg = classify(F, cfg.gamma), cd = classify(F, cfg.delta);
    r.class_gamma = to_string(cg);
    r.class_delta = to_string(cd);
    r.nonconj = (cg == ElementClass::Split && cd == ElementClass::NonSplit) ||
                (cg == ElementClass::NonSplit && cd == ElementClass::Split);

    const auto& [A, B, C, D] = cfg.P;
    Mat2 steps[3] = {mul(F, A, adj(F, B)), mul(F, B, adj(F, C)), mul(F, C, adj(F, D))};
    r.unipotent_steps = std::all_of(std::begin(steps), std::end(steps),
                                    [&](const Mat2& m) { return classify(F, m) == ElementClass::Unipotent; });
    if (r.unipotent_steps) {
        auto f0 = detail::unipotent_fixed_point(F, steps[0]);
        auto f1 = detail::unipotent_fixed_point(F, steps[1]);
        auto f2 = detail::unipotent_fixed_point(F, steps[2]);
        r.distinct_subgroups = f0 != f1 && f1 != f2 && f0 != f2;
    }
    r.point_assumption = r.unipotent_steps && r.distinct_subgroups;

    auto safe_order = [&](const Mat2& m) { return order(F, m); };
    r.order_gamma = safe_order(cfg.gamma);
    r.order_delta = safe_order(cfg.delta);
    r.large_orders = r.order_gamma > 60 || r.order_delta > 60;

    r.generation = detail::generates_psl2(F, cfg.gamma, cfg.delta, generation_cap);
    if (r.generation) {
        r.generation_method = "closure";
    } else if (r.nonconj && r.large_orders) {
        r.generation = true;
        r.generation_method = "order bound";
    } else {
        r.generation_method = "undecided";
    }
    return r;
}

// ---------------------------------------------------------------------------
// proper decompositions

struct ProperDecomposition {
    Mat2 x, y, z, w;
    bool max_x = false, max_y = false, max_z = false, max_w = false;
    bool valid = false;  // xz = gamma and wy = delta^-1
};

enum class Foliation { First, Second };

inline ProperDecomposition proper_decomposition(const Quad<Mat2>& q, Foliation which, const Params& prm) {
    const PrimeField& F = prm.F;
    const auto& [A, B, C, D] = q;
    const Mat2 Bi = adj(F, B), Ci = adj(F, C), Di = adj(F, D);
    ProperDecomposition d;
    if (which == Foliation::First) {
        d.x = mul(F, A, Bi);
        d.y = mul(F, Bi, A);
        d.z = mul(F, C, Di);
        d.w = mul(F, Di, C);
    } else {
        d.x = mul(F, A, Ci);
        d.y = mul(F, Ci, A);
        d.z = mul(F, mul(F, C, Bi), mul(F, C, Di));
        d.w = mul(F, mul(F, Di, C), mul(F, Bi, C));
    }
    d.valid = mul(F, d.x, d.z) == prm.gamma && mul(F, d.w, d.y) == adj(F, prm.delta);
    auto maxi = [&](const Mat2& m) {
        ElementClass c = classify(F, m);
        if (c == ElementClass::Identity || c == ElementClass::Involution) return false;
        return is_maximal(F, m);
    };
    d.max_x = maxi(d.x);
    d.max_y = maxi(d.y);
    d.max_z = maxi(d.z);
    d.max_w = maxi(d.w);
    return d;
}

using DecompKey = std::array<Mat2, 4>;  // (x, z, y, w)

/// Canonical representative of a decomposition under conjugation by
/// equal-class pairs of the two tori and the global sign.
inline DecompKey decomposition_key(const Mat2& x, const Mat2& y, const Mat2& z, const Mat2& w, const Params& prm) {
    const PrimeField& F = prm.F;
    DecompKey best{};
    bool have = false;
    for (int sgn : {1, -1}) {
        auto sg = [&](const Mat2& m) { return sgn == 1 ? m : negate(F, m); };
        for (const auto& g : prm.cent_gamma) {
            const Mat2 gi = inverse(F, g.g);
            const Mat2 cx = mul(F, g.g, sg(x), gi), cz = mul(F, g.g, sg(z), gi);
            for (const auto& h : prm.cent_delta) {
                if (h.det_class != g.det_class) continue;
                const Mat2 hi = inverse(F, h.g);
                DecompKey k{cx, cz, mul(F, h.g, sg(y), hi), mul(F, h.g, sg(w), hi)};
                if (!have || k < best) {
                    best = k;
                    have = true;
                }
            }
        }
    }
    return best;
}

struct UnipotentDecompositionClass {
    DecompKey key;
    std::size_t members = 0;
    ProperDecomposition sample;
};

/// Exhaustive search over SL2 factorizations with x, y, z, w unipotent up
/// to sign, grouped into equivalence classes.
inline std::vector<UnipotentDecompositionClass> unipotent_decompositions(const Params& prm) {
    const PrimeField& F = prm.F;
    const u32 two = 2, mtwo = F.neg(2);
    // all non-central SL2 matrices of trace +-2
    std::vector<Mat2> unis;
    for (u32 a = 0; a < F.p(); ++a)
        for (u32 b = 0; b < F.p(); ++b)
            for (u32 c = 0; c < F.p(); ++c)
                for (u32 t : {two, mtwo}) {
                    Mat2 m{a, b, c, F.sub(t, a)};
                    if (det(F, m) == 1 && !is_scalar(m)) unis.push_back(m);
                }
    const Mat2 dinv = adj(F, prm.delta);
    auto unip = [&](const Mat2& m) { return !is_scalar(m) && (trace(F, m) == two || trace(F, m) == mtwo); };
    std::vector<std::pair<Mat2, Mat2>> xz, yw;
    for (const Mat2& x : unis) {
        Mat2 z = mul(F, adj(F, x), prm.gamma);
        if (unip(z)) xz.emplace_back(x, z);
        Mat2 w = mul(F, dinv, adj(F, x));  // here x plays y
        if (unip(w)) yw.emplace_back(x, w);
    }
    std::map<DecompKey, UnipotentDecompositionClass> classes;
    for (const auto& [x, z] : xz)
        for (const auto& [y, w] : yw) {
            if (trace(F, x) != trace(F, y) || trace(F, z) != trace(F, w)) continue;
            if (!sl2_conjugate(F, x, y) || !sl2_conjugate(F, z, w)) continue;
            DecompKey k = decomposition_key(x, y, z, w, prm);
            auto& cl = classes[k];
            if (cl.members++ == 0) {
                cl.key = k;
                cl.sample = ProperDecomposition{x, y, z, w, false, false, false, false, true};
            }
        }
    std::vector<UnipotentDecompositionClass> out;
    for (auto& [k, c] : classes) out.push_back(c);
    return out;
}

inline bool same_decomposition_class(const ProperDecomposition& d, const UnipotentDecompositionClass& c,
                                     const Params& prm) {
    return decomposition_key(d.x, d.y, d.z, d.w, prm) == c.key;
}

// ---------------------------------------------------------------------------
// counting in the trace model

inline constexpr u32 kCountMaxPrime = 61;

/// Number of canonical keys satisfying membership.  Loops over (a,b,c,x,z)
/// with y = t_delta (the sign-flip on M1 absorbs the other common sign).
inline u64 count_X(const Params& prm, u32 max_prime = kCountMaxPrime) {
    const PrimeField& F = prm.F;
    const u32 p = F.p();
    if (p > max_prime) throw std::length_error("count_X: p = " + std::to_string(p) + " exceeds budget bound " +
                                               std::to_string(max_prime));
    if (!prm.non_conjugation_assumption()) throw std::invalid_argument("count_X: gamma, delta fail the type assumption");
    const u32 y = prm.t_delta, rhs = F.add(prm.t_gamma, prm.t_delta);
    std::vector<CanonicalKey> keys;
    auto consider = [&](const TraceTuple& t) {
        if (fricke_check(F, t)) keys.push_back(canonicalize(F, t));
    };
    for (u32 a = 0; a < p; ++a)
        for (u32 c = 0; c < p; ++c) {
            const u32 ac = F.mul(a, c);
            for (u32 x = 0; x < p; ++x)
                for (u32 z = 0; z < p; ++z) {
                    // b w = rhs - ac + xz
                    const u32 bw = F.add(F.sub(rhs, ac), F.mul(x, z));
                    for (u32 b = 0; b < p; ++b) {
                        if (b != 0) {
                            consider({a, b, c, x, y, z, F.div(bw, b)});
                        } else if (bw == 0) {
                            for (u32 w = 0; w < p; ++w) consider({a, 0, c, x, y, z, w});
                        }
                    }
                }
        }
    std::sort(keys.begin(), keys.end());
    return static_cast<u64>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

// ---------------------------------------------------------------------------
// orbit-level checks

/// sigma_i-matrix of a point: AB^-1, BC^-1, CD^-1.
inline Mat2 sigma_matrix(const PrimeField& F, const Quad<Mat2>& q, int i) {
    return mul(F, q[i - 1], adj(F, q[i]));
}

struct CycleOrderCheck {
    bool ok = true;
    std::size_t mismatches = 0;
    std::optional<u32> first_bad;
};

/// Cycle length of every point under sigma_i equals the PSL2 order of its
/// sigma_i-matrix.
inline CycleOrderCheck check_cycle_orders(const OrbitIndex& O, const Perm& sigma, int i) {
    CycleOrderCheck r;
    const std::vector<u32> len = cycle_length_at(sigma);
    for (u32 k = 0; k < O.size(); ++k) {
        if (len[k] != order(O.F, sigma_matrix(O.F, O.points[k], i))) {
            ++r.mismatches;
            if (!r.first_bad) r.first_bad = k;
        }
    }
    r.ok = r.mismatches == 0;
    return r;
}

/// Classes occurring among the sigma_i-matrices of the orbit.
inline std::set<ElementClass> sigma_types(const OrbitIndex& O, int i) {
    std::set<ElementClass> out;
    for (const auto& q : O.points) out.insert(classify(O.F, sigma_matrix(O.F, q, i)));
    return out;
}

struct KeyAgreement {
    bool injective = false;  // distinct trace keys have inequivalent points
    bool closed = false;     // images with equal trace keys are equivalent
    std::size_t checked_images = 0;
    bool ok() const { return injective && closed; }
};

/// Compares the trace-key partition with the exact one on the orbit and on
/// all generator images of orbit points.
inline KeyAgreement verify_key_agreement(const OrbitIndex& O, const Params& prm, unsigned threads = 1) {
    const SL2Group G{O.F};
    const std::size_t n = O.size();
    std::vector<ExactKey> ek(n);
    std::vector<char> bad(n, 0);
    parallel_for(n, threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            ek[i] = key_exact(O.points[i], prm);
            for (int l : all_letters()) {
                Quad<Mat2> img = apply_letter(G, l, O.points[i]);
                if (!equivalent_exact(img, O.points[O.index_of(img)], prm)) bad[i] = 1;
            }
        }
    });
    KeyAgreement r;
    r.checked_images = n * all_letters().size();
    r.closed = std::none_of(bad.begin(), bad.end(), [](char c) { return c != 0; });
    std::sort(ek.begin(), ek.end());
    r.injective = std::adjacent_find(ek.begin(), ek.end()) == ek.end();
    return r;
}

// ---------------------------------------------------------------------------
// pipeline

inline constexpr u32 kKeyVerifyMaxPrime = 61;

struct PipelineOptions {
    u64 seed = 7;
    std::size_t max_points = 20'000'000;
    std::size_t max_trials = 4000;
    unsigned threads = 1;
    bool count = true;  // run count_X when p is within its bound
    std::string dump_path;  // orbit keys are written here when set
};

enum class PipelineStatus { Ok, Precondition, Budget, Internal };

inline int exit_code(PipelineStatus s) {
    switch (s) {
        case PipelineStatus::Ok: return 0;
        case PipelineStatus::Precondition: return 1;
        case PipelineStatus::Budget: return 2;
        case PipelineStatus::Internal: return 3;
    }
    return 3;
}

struct QuotientReport {
    u32 p = 0;
    u64 seed = 0;
    PipelineStatus status = PipelineStatus::Ok;
    std::string error;
    std::string stage;

    std::optional<AssumptionReport> assumptions;
    std::size_t n = 0;
    std::optional<u64> x_count;
    std::string key_mode;  // "trace", "trace+exact", or "trace (unverified)"
    std::optional<KeyAgreement> key_agreement;

    std::map<std::string, int> generator_signs;
    bool cycle_orders_ok = false;
    bool all_sigma1_types = false;
    GiantClass classification = GiantClass::Inconclusive;
    std::string classification_method;
    std::optional<GiantCertificate> certificate;
    std::size_t giant_trials = 0;

    bool x_nontrivial = false;
    std::string f2_verdict;
    std::string f2_justification;

    std::map<std::string, long long> timings_ms;
    // retained for revalidation; not serialized
    std::vector<Perm> generators;  // sigma1, sigma2, sigma3, epsilon
    Perm perm_x, perm_y;

    bool certified() const {
        return status == PipelineStatus::Ok &&
               (classification == GiantClass::Alternating || classification == GiantClass::Symmetric) &&
               f2_verdict.rfind("F2 surjects onto", 0) == 0;
    }
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
class StageTimer {
public:
    StageTimer(std::map<std::string, long long>& sink, std::string name) : sink_(sink), name_(std::move(name)) {}
    ~StageTimer() {
        sink_[name_] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::map<std::string, long long>& sink_;
    std::string name_;
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline void run_stages(QuotientReport& rep, const Quad<Mat2>* override_point, const PipelineOptions& opt) {
    rep.stage = "build";
    const WitnessConfig cfg = build(rep.p);
    const Params prm = params_of(cfg);

    rep.stage = "assumptions";
    rep.assumptions = check_assumptions(cfg);
    if (!rep.assumptions->nonconj) throw PreconditionError("assumption on gamma, delta types fails");
    if (!rep.assumptions->point_assumption) throw PreconditionError("assumption on the witness point fails");

    rep.stage = "enumerate";
    OrbitIndex O = [&] {
        StageTimer t(rep.timings_ms, "enumerate");
        EnumerateOptions eo;
        eo.max_points = opt.max_points;
        eo.threads = opt.threads;
        try {
            return enumerate(override_point ? *override_point : cfg.P, prm, eo);
        } catch (const BudgetExceeded& e) {
            rep.n = e.partial();
            throw;
        }
    }();
    rep.n = O.size();
    if (!opt.dump_path.empty()) write_dump(opt.dump_path, O);

    rep.stage = "keys";
    if (rep.assumptions->large_orders) {
        rep.key_mode = "trace";
    } else if (rep.p <= kKeyVerifyMaxPrime) {
        StageTimer t(rep.timings_ms, "key_verify");
        rep.key_agreement = verify_key_agreement(O, prm, opt.threads);
        rep.key_mode = "trace+exact";
        if (!rep.key_agreement->ok()) throw std::logic_error("trace key and exact key partitions differ");
    } else {
        rep.key_mode = "trace (unverified)";
    }

    if (opt.count && rep.p <= kCountMaxPrime) {
        rep.stage = "count";
        StageTimer t(rep.timings_ms, "count");
        rep.x_count = count_X(prm);
    }

    rep.stage = "permutations";
    std::vector<Perm> gens;
    {
        StageTimer t(rep.timings_ms, "permutations");
        for (int i = 1; i <= 3; ++i) gens.push_back(perm_of({i}, O, opt.threads));
        gens.push_back(epsilon_perm(O, prm, opt.threads));
        F2Perms f = f2_perms(O, opt.threads);
        rep.perm_x = std::move(f.x);
        rep.perm_y = std::move(f.y);
    }
    const char* names[] = {"sigma1", "sigma2", "sigma3", "epsilon"};
    for (int i = 0; i < 4; ++i) rep.generator_signs[names[i]] = sign(gens[i]);
    rep.generator_signs["x"] = sign(rep.perm_x);
    rep.generator_signs["y"] = sign(rep.perm_y);

    rep.stage = "lemmas";
    rep.cycle_orders_ok = true;
    for (int i = 1; i <= 3; ++i) rep.cycle_orders_ok = rep.cycle_orders_ok && check_cycle_orders(O, gens[i - 1], i).ok;
    auto types = sigma_types(O, 1);
    rep.all_sigma1_types = types.count(ElementClass::Unipotent) && types.count(ElementClass::Split) &&
                           types.count(ElementClass::NonSplit);

    rep.stage = "classify";
    {
        StageTimer t(rep.timings_ms, "classify");
        GiantOptions go;
        go.seed = opt.seed;
        go.max_trials = opt.max_trials;
        go.threads = opt.threads;
        GiantVerdict v = classify_giant(gens, O.size(), go);
        rep.classification = v.cls;
        rep.classification_method = v.method;
        rep.certificate = v.certificate;
        rep.giant_trials = v.trials;
    }

    rep.generators = std::move(gens);

    rep.stage = "f2";
    rep.x_nontrivial = !is_identity(rep.perm_x);
    const bool giant = rep.classification != GiantClass::Inconclusive;
    if (!giant) {
        rep.f2_verdict = "undetermined";
        rep.f2_justification = "group generated by the orbit action was not certified to be a giant";
    } else if (rep.x_nontrivial && rep.generator_signs["x"] == 1) {
        rep.f2_verdict = "F2 surjects onto A_n";
        rep.f2_justification =
            "the F2 image is a normal subgroup of a group containing A_n; it contains the nontrivial even "
            "permutation x, so it contains A_n, and it lies in A_n since x and y are even";
        if (rep.generator_signs["y"] != 1) {
            rep.f2_verdict = "F2 surjects onto S_n";
            rep.f2_justification = "the F2 image contains A_n and the odd permutation y";
        }
    } else {
        rep.f2_verdict = "undetermined";
        rep.f2_justification = rep.x_nontrivial ? "x is odd" : "x acts trivially";
    }
    rep.stage = "done";
}
}  // namespace detail

/// Full quotient pipeline.  Never throws; failures are recorded in status,
/// stage and error.  `point` replaces the witness point when given.
inline QuotientReport run_pipeline(u32 p, const PipelineOptions& opt = {},
                                   const std::optional<Quad<Mat2>>& point = std::nullopt) {
    QuotientReport rep;
    rep.p = p;
    rep.seed = opt.seed;
    auto t0 = std::chrono::steady_clock::now();
    try {
        detail::run_stages(rep, point ? &*point : nullptr, opt);
    } catch (const BudgetExceeded& e) {
        rep.status = PipelineStatus::Budget;
        rep.error = e.what();
    } catch (const std::length_error& e) {
        rep.status = PipelineStatus::Budget;
        rep.error = e.what();
    } catch (const std::invalid_argument& e) {
        rep.status = PipelineStatus::Precondition;
        rep.error = e.what();
    } catch (const std::exception& e) {
        rep.status = PipelineStatus::Internal;
        rep.error = e.what();
    }
    rep.timings_ms["total"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace charquo
