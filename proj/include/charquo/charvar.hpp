#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <stdexcept>
#include <vector>

#include "braidquandle.hpp"
#include "ffield.hpp"

namespace charquo {

/// Trace coordinates of (M1, M2, M3) = (B^-1 A, A^-1 C, D^-1 C):
///   a = tr M1, b = tr M2, c = tr M3,
///   x = tr M2M3, y = tr M1M3, z = tr M1M2, w = tr M1M2M3.
/// The last coordinate is printed as "p" in reports; internally it is w so
/// it cannot be confused with the characteristic.
using TraceTuple = std::array<u32, 7>;
using CanonicalKey = TraceTuple;

enum TraceCoord { TA = 0, TB, TC, TX, TY, TZ, TW };

inline constexpr const char* kTraceNames[7] = {"a", "b", "c", "x", "y", "z", "p"};

namespace detail {
inline u32 tr_prod(const PrimeField& F, const Mat2& x, const Mat2& y) {
    u64 p = F.p();
    return static_cast<u32>(((u64)x.a * y.a + (u64)x.b * y.c + (u64)x.c * y.b + (u64)x.d * y.d) % p);
}
}  // namespace detail

/// Entries of Q must have determinant 1.
inline TraceTuple from_quad(const PrimeField& F, const Quad<Mat2>& q) {
    const Mat2 m1 = mul(F, adj(F, q[1]), q[0]);
    const Mat2 m2 = mul(F, adj(F, q[0]), q[2]);
    const Mat2 m3 = mul(F, adj(F, q[3]), q[2]);
    const Mat2 m12 = mul(F, m1, m2);
    return {trace(F, m1),
            trace(F, m2),
            trace(F, m3),
            detail::tr_prod(F, m2, m3),
            detail::tr_prod(F, m1, m3),
            trace(F, m12),
            detail::tr_prod(F, m12, m3)};
}

/// Polynomial action of sigma_{|letter|}^{sign(letter)} on trace coordinates.
inline TraceTuple sigma_action(const PrimeField& F, int letter, const TraceTuple& t) {
    const u32 a = t[0], b = t[1], c = t[2], x = t[3], y = t[4], z = t[5], w = t[6];
    auto m = [&](u32 u, u32 v) { return F.mul(u, v); };
    auto s = [&](u32 u, u32 v) { return F.sub(u, v); };
    switch (letter) {
        case 1: return {a, s(m(a, b), z), c, s(m(a, x), w), y, b, x};
        case -1: return {a, z, c, w, y, s(m(a, z), b), s(m(a, w), x)};
        case 2:
            return {s(m(a, z), b), a, s(m(c, z), w),
                    F.add(s(s(m(m(a, c), z), m(a, w)), m(b, c)), x), y, z, c};
        case -2:
            return {b, s(m(b, z), a), w,
                    F.add(s(x, m(b, c)), s(m(m(b, w), z), m(a, w))), y, z, s(m(w, z), c)};
        case 3: return {a, x, c, s(m(c, x), b), y, w, s(m(c, w), z)};
        case -3: return {a, s(m(c, b), x), c, b, y, s(m(c, z), w), z};
        default: throw std::invalid_argument("sigma_action: bad letter");
    }
}

inline TraceTuple sigma_word(const PrimeField& F, const BraidWord& w, TraceTuple t) {
    for (int l : w) t = sigma_action(F, l, t);
    return t;
}

// Changing the sign of the lift of M_i negates every trace whose word
// contains M_i an odd number of times (trace is linear in each factor).
// Coordinates involve: a{1} b{2} c{3} x{2,3} y{1,3} z{1,2} w{1,2,3}.
inline constexpr std::array<u32, 7> kCoordSupport = {0b001, 0b010, 0b100, 0b110, 0b101, 0b011, 0b111};

/// flip by a mask over {M1, M2, M3}.
inline TraceTuple flip(const PrimeField& F, const TraceTuple& t, unsigned mask) {
    TraceTuple r = t;
    for (int i = 0; i < 7; ++i)
        if (std::popcount(kCoordSupport[i] & mask) & 1) r[i] = F.neg(r[i]);
    return r;
}

inline CanonicalKey canonicalize(const PrimeField& F, const TraceTuple& t) {
    CanonicalKey best = t;
    for (unsigned mask = 1; mask < 8; ++mask) {
        TraceTuple r = flip(F, t, mask);
        if (r < best) best = r;
    }
    return best;
}

inline CanonicalKey fast_key(const PrimeField& F, const Quad<Mat2>& q) { return canonicalize(F, from_quad(F, q)); }

inline u32 fricke_value(const PrimeField& F, const TraceTuple& t) {
    const u32 a = t[0], b = t[1], c = t[2], x = t[3], y = t[4], z = t[5], w = t[6];
    auto m = [&](u32 u, u32 v) { return F.mul(u, v); };
    u32 lin = F.sub(F.add(F.add(m(a, x), m(b, y)), m(c, z)), m(m(a, b), c));
    u32 cst = 0;
    for (u32 v : {a, b, c, x, y, z}) cst = F.add(cst, m(v, v));
    cst = F.add(cst, m(m(x, y), z));
    cst = F.sub(cst, m(m(a, b), z));
    cst = F.sub(cst, m(m(b, c), x));
    cst = F.sub(cst, m(m(c, a), y));
    cst = F.sub(cst, 4);
    return F.add(F.sub(m(w, w), m(lin, w)), cst);
}

inline bool fricke_check(const PrimeField& F, const TraceTuple& t) { return fricke_value(F, t) == 0; }

/// The fixed parameters gamma, delta (determinant-1 representatives).
struct Params {
    PrimeField F;
    Mat2 gamma, delta;
    u32 t_gamma = 0, t_delta = 0;
    std::vector<PglElement> cent_gamma, cent_delta;  // empty unless semisimple

    Params(const PrimeField& f, const Mat2& g, const Mat2& d) : F(f), gamma(g), delta(d) {
        if (det(F, g) != 1 || det(F, d) != 1) throw std::invalid_argument("Params: gamma, delta must lie in SL2");
        t_gamma = trace(F, g);
        t_delta = trace(F, d);
        auto semisimple = [&](const Mat2& m) {
            ElementClass c = classify(F, m);
            return c == ElementClass::Split || c == ElementClass::NonSplit;
        };
        if (semisimple(g)) cent_gamma = centralizer_pgl(F, g);
        if (semisimple(d)) cent_delta = centralizer_pgl(F, d);
    }

    ElementClass class_gamma() const { return classify(F, gamma); }
    ElementClass class_delta() const { return classify(F, delta); }

    /// Non-trivial, non-involution, non-unipotent; one split, the other not.
    bool non_conjugation_assumption() const {
        ElementClass g = class_gamma(), d = class_delta();
        return (g == ElementClass::Split && d == ElementClass::NonSplit) ||
               (g == ElementClass::NonSplit && d == ElementClass::Split);
    }
};

/// Membership in the trace model of X^(2): some flip of t, with a common
/// sign e on (t_gamma, t_delta), satisfies Fricke, y = e t_delta and
/// ac + bw - xz = e (t_gamma + t_delta).
inline bool membership(const TraceTuple& t, const Params& P) {
    const PrimeField& F = P.F;
    if (!fricke_check(F, t)) return false;  // flip invariant
    for (unsigned mask = 0; mask < 8; ++mask) {
        TraceTuple r = flip(F, t, mask);
        u32 lhs = F.sub(F.add(F.mul(r[TA], r[TC]), F.mul(r[TB], r[TW])), F.mul(r[TX], r[TZ]));
        for (int e : {1, -1}) {
            u32 td = e == 1 ? P.t_delta : F.neg(P.t_delta);
            u32 sum = F.add(P.t_gamma, P.t_delta);
            u32 rhs = e == 1 ? sum : F.neg(sum);
            if (r[TY] == td && lhs == rhs) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// exact key

using ExactKey = std::array<Mat2, 4>;

/// Lexicographically least projective normal form of g Q h over pairs
/// (g, h) in C_PGL(gamma) x C_PGL(delta) with equal determinant class.
inline ExactKey key_exact(const Quad<Mat2>& q, const Params& P) {
    const PrimeField& F = P.F;
    if (P.cent_gamma.empty() || P.cent_delta.empty())
        throw std::invalid_argument("key_exact: gamma and delta must be semisimple");
    ExactKey best{};
    bool have = false;
    for (const auto& g : P.cent_gamma) {
        const Mat2 ga = mul(F, g.g, q[0]);
        for (const auto& h : P.cent_delta) {
            if (h.det_class != g.det_class) continue;
            Mat2 first = normalize_pgl(F, mul(F, ga, h.g));
            if (have && best[0] < first) continue;
            ExactKey cand{first, {}, {}, {}};
            bool better = !have || first < best[0];
            for (int i = 1; i < 4; ++i) {
                cand[i] = normalize_pgl(F, mul(F, g.g, q[i], h.g));
                if (!better) {
                    if (best[i] < cand[i]) break;
                    if (cand[i] < best[i]) better = true;
                }
            }
            if (better) {
                best = cand;
                have = true;
            }
        }
    }
    return best;
}

/// Decides whether q1 ~ q2 without canonicalizing: for each g in the gamma
/// torus the candidate h is forced by the first coordinate.
inline bool equivalent_exact(const Quad<Mat2>& q1, const Quad<Mat2>& q2, const Params& P) {
    const PrimeField& F = P.F;
    std::array<Mat2, 4> target;
    for (int i = 0; i < 4; ++i) target[i] = normalize_pgl(F, q2[i]);
    for (const auto& g : P.cent_gamma) {
        Mat2 h = mul(F, inverse(F, mul(F, g.g, q1[0])), q2[0]);
        if (det(F, h) == 0) continue;
        if (normalize_pgl(F, mul(F, h, P.delta)) != normalize_pgl(F, mul(F, P.delta, h))) continue;
        if (F.legendre(det(F, h)) != g.det_class) continue;
        bool ok = true;
        for (int i = 1; i < 4 && ok; ++i) ok = normalize_pgl(F, mul(F, g.g, q1[i], h)) == target[i];
        if (ok) return true;
    }
    return false;
}

}  // namespace charquo
