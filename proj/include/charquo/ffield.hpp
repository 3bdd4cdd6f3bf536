#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace charquo {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// integer helpers

inline u64 mulmod64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for every 64-bit input.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : small) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// F_p

class PrimeField {
public:
    explicit PrimeField(u32 p) : p_(p) {
        if (p < 5 || !is_prime_u64(p)) {
            throw std::invalid_argument("PrimeField: modulus must be a prime >= 5, got " +
                                        std::to_string(p));
        }
        if (p <= (1u << 20)) {
            auto t = std::make_shared<std::vector<u32>>(p, 0);
            (*t)[1] = 1;
            for (u32 a = 2; a < p; ++a) {
                // inv(a) = -(p/a) * inv(p mod a)
                (*t)[a] = static_cast<u32>((u64)(p - p / a) * (*t)[p % a] % p);
            }
            inv_ = std::move(t);
        }
    }

    u32 p() const { return p_; }
    u32 half() const { return (p_ - 1) / 2; }

    u32 reduce(i64 v) const {
        i64 r = v % static_cast<i64>(p_);
        return static_cast<u32>(r < 0 ? r + p_ : r);
    }
    u32 add(u32 a, u32 b) const {
        u32 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const { return a ? p_ - a : 0; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>((u64)a * b % p_); }
    u32 pow(u32 a, u64 e) const { return static_cast<u32>(powmod64(a, e, p_)); }

    u32 inv(u32 a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        if (inv_) return (*inv_)[a];
        return pow(a, p_ - 2);
    }
    u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }

    /// Euler's criterion: 0, +1 or -1.
    int legendre(u32 a) const {
        a %= p_;
        if (a == 0) return 0;
        return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
    }

    /// Symmetric representative in (-p/2, p/2).
    i64 centered(u32 a) const { return a > half() ? static_cast<i64>(a) - p_ : a; }

    u32 least_nonresidue() const {
        for (u32 a = 2;; ++a)
            if (legendre(a) == -1) return a;
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    u32 p_;
    std::shared_ptr<const std::vector<u32>> inv_;
};

// ---------------------------------------------------------------------------
// 2x2 matrices

/// Row-major 2x2 matrix [[a, b], [c, d]] with entries in [0, p).
struct Mat2 {
    u32 a = 1, b = 0, c = 0, d = 1;
    auto operator<=>(const Mat2&) const = default;
    bool operator==(const Mat2&) const = default;
    std::array<u32, 4> entries() const { return {a, b, c, d}; }
};

/// PSL2 elements are carried by their canonical lift (see canon()).
using ProjMat2 = Mat2;

enum class ElementClass { Identity, Involution, Unipotent, Split, NonSplit };

inline const char* to_string(ElementClass c) {
    switch (c) {
        case ElementClass::Identity: return "identity";
        case ElementClass::Involution: return "involution";
        case ElementClass::Unipotent: return "unipotent";
        case ElementClass::Split: return "split";
        case ElementClass::NonSplit: return "non-split";
    }
    return "?";
}

/// A PGL2 element together with the quadratic character of its determinant.
struct PglElement {
    Mat2 g;
    int det_class = 1;  // +1 square, -1 non-square
};

inline Mat2 make_mat(const PrimeField& F, i64 a, i64 b, i64 c, i64 d) {
    return {F.reduce(a), F.reduce(b), F.reduce(c), F.reduce(d)};
}

inline Mat2 identity_mat() { return {1, 0, 0, 1}; }

inline Mat2 mul(const PrimeField& F, const Mat2& x, const Mat2& y) {
    const u64 p = F.p();
    return {static_cast<u32>(((u64)x.a * y.a + (u64)x.b * y.c) % p),
            static_cast<u32>(((u64)x.a * y.b + (u64)x.b * y.d) % p),
            static_cast<u32>(((u64)x.c * y.a + (u64)x.d * y.c) % p),
            static_cast<u32>(((u64)x.c * y.b + (u64)x.d * y.d) % p)};
}

inline Mat2 mul(const PrimeField& F, const Mat2& x, const Mat2& y, const Mat2& z) {
    return mul(F, mul(F, x, y), z);
}

inline u32 det(const PrimeField& F, const Mat2& m) {
    return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
}

inline u32 trace(const PrimeField& F, const Mat2& m) { return F.add(m.a, m.d); }

inline Mat2 scale(const PrimeField& F, const Mat2& m, u32 s) {
    return {F.mul(m.a, s), F.mul(m.b, s), F.mul(m.c, s), F.mul(m.d, s)};
}

inline Mat2 negate(const PrimeField& F, const Mat2& m) {
    return {F.neg(m.a), F.neg(m.b), F.neg(m.c), F.neg(m.d)};
}

/// Adjugate; equals the inverse for determinant-1 matrices.
inline Mat2 adj(const PrimeField& F, const Mat2& m) { return {m.d, F.neg(m.b), F.neg(m.c), m.a}; }

inline Mat2 inverse(const PrimeField& F, const Mat2& m) {
    u32 dt = det(F, m);
    if (dt == 1) return adj(F, m);
    return scale(F, adj(F, m), F.inv(dt));
}

inline Mat2 power(const PrimeField& F, Mat2 m, u64 e) {
    Mat2 r = identity_mat();
    while (e) {
        if (e & 1) r = mul(F, r, m);
        m = mul(F, m, m);
        e >>= 1;
    }
    return r;
}

inline bool is_scalar(const Mat2& m) { return m.b == 0 && m.c == 0 && m.a == m.d; }

/// Canonical sign: the first nonzero entry (row-major) lies in [1, (p-1)/2].
inline Mat2 canon(const PrimeField& F, const Mat2& m) {
    u32 lead = m.a ? m.a : (m.b ? m.b : (m.c ? m.c : m.d));
    return lead > F.half() ? negate(F, m) : m;
}

/// Projective normal form: the first nonzero entry is scaled to 1.
inline Mat2 normalize_pgl(const PrimeField& F, const Mat2& m) {
    u32 lead = m.a ? m.a : (m.b ? m.b : (m.c ? m.c : m.d));
    if (lead == 0) throw std::domain_error("normalize_pgl: zero matrix");
    return lead == 1 ? m : scale(F, m, F.inv(lead));
}

inline bool is_identity_psl(const PrimeField& F, const Mat2& m) {
    return m.b == 0 && m.c == 0 && m.a == m.d && F.mul(m.a, m.a) == 1;
}

inline Mat2 random_sl2(const PrimeField& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<u32> U(0, F.p() - 1);
    for (;;) {
        u32 a = U(rng), b = U(rng);
        if (a != 0) {
            u32 c = U(rng);
            u32 d = F.div(F.add(1, F.mul(b, c)), a);
            return {a, b, c, d};
        }
        if (b != 0) {
            u32 d = U(rng);
            return {0, b, F.neg(F.inv(b)), d};
        }
    }
}

// ---------------------------------------------------------------------------
// classification, orders

inline ElementClass classify(const PrimeField& F, const Mat2& m) {
    if (is_identity_psl(F, m)) return ElementClass::Identity;
    u32 t = trace(F, m);
    if (t == 0) return ElementClass::Involution;
    u32 disc = F.sub(F.mul(t, t), 4);
    if (disc == 0) return ElementClass::Unipotent;
    return F.legendre(disc) == 1 ? ElementClass::Split : ElementClass::NonSplit;
}

/// Order of the cyclic centralizer in PSL2 for the given class (2 for involutions).
inline u64 centralizer_order(const PrimeField& F, ElementClass c) {
    switch (c) {
        case ElementClass::Identity: return 1;
        case ElementClass::Involution: return 2;
        case ElementClass::Unipotent: return F.p();
        case ElementClass::Split: return (F.p() - 1) / 2;
        case ElementClass::NonSplit: return (F.p() + 1) / 2;
    }
    return 0;
}

inline u64 order(const PrimeField& F, const Mat2& m) {
    u64 k = centralizer_order(F, classify(F, m));
    for (u64 q : prime_divisors(k)) {
        while (k % q == 0 && is_identity_psl(F, power(F, m, k / q))) k /= q;
    }
    return k;
}

inline bool is_maximal(const PrimeField& F, const Mat2& m) {
    ElementClass c = classify(F, m);
    if (c == ElementClass::Identity || c == ElementClass::Involution)
        throw std::invalid_argument("is_maximal: identity and involutions have no cyclic centralizer");
    return order(F, m) == centralizer_order(F, c);
}

// ---------------------------------------------------------------------------
// centralizers and conjugators

/// C_PGL2(M) for semisimple M.  The torus is {I} together with the pencil
/// M + aI, a ranging over values where a^2 + tr(M) a + 1 != 0; the
/// determinant of M + aI is exactly that quadratic.
inline std::vector<PglElement> centralizer_pgl(const PrimeField& F, const Mat2& m) {
    ElementClass c = classify(F, m);
    if (c != ElementClass::Split && c != ElementClass::NonSplit)
        throw std::invalid_argument(std::string("centralizer_pgl: unsupported class ") + to_string(c));
    const u32 t = trace(F, m);
    std::vector<PglElement> out;
    out.reserve(F.p() + 1);
    out.push_back({identity_mat(), 1});
    for (u32 a = 0; a < F.p(); ++a) {
        u32 dt = F.add(F.add(F.mul(a, a), F.mul(t, a)), 1);
        if (dt == 0) continue;
        Mat2 g{F.add(m.a, a), m.b, m.c, F.add(m.d, a)};
        out.push_back({normalize_pgl(F, g), F.legendre(dt)});
    }
    return out;
}

namespace detail {

// Nullspace of a 4x4 system over F_p, returned as basis vectors.
inline std::vector<std::array<u32, 4>> nullspace4(const PrimeField& F, std::array<std::array<u32, 4>, 4> A) {
    std::array<int, 4> pivcol{-1, -1, -1, -1};
    int row = 0;
    for (int col = 0; col < 4 && row < 4; ++col) {
        int sel = -1;
        for (int r = row; r < 4; ++r)
            if (A[r][col]) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(A[sel], A[row]);
        u32 iv = F.inv(A[row][col]);
        for (auto& x : A[row]) x = F.mul(x, iv);
        for (int r = 0; r < 4; ++r) {
            if (r == row || A[r][col] == 0) continue;
            u32 f = A[r][col];
            for (int k = 0; k < 4; ++k) A[r][k] = F.sub(A[r][k], F.mul(f, A[row][k]));
        }
        pivcol[row] = col;
        ++row;
    }
    std::array<bool, 4> is_piv{};
    for (int r = 0; r < row; ++r) is_piv[pivcol[r]] = true;
    std::vector<std::array<u32, 4>> basis;
    for (int fc = 0; fc < 4; ++fc) {
        if (is_piv[fc]) continue;
        std::array<u32, 4> v{};
        v[fc] = 1;
        for (int r = 0; r < row; ++r) v[pivcol[r]] = F.neg(A[r][fc]);
        basis.push_back(v);
    }
    return basis;
}

// All g with g M = N g, as a basis of the solution space.
inline std::vector<Mat2> intertwiners(const PrimeField& F, const Mat2& M, const Mat2& N) {
    // unknown g = (g0 g1; g2 g3); row (i,j) of gM - Ng
    const std::array<u32, 4> m = M.entries(), n = N.entries();
    std::array<std::array<u32, 4>, 4> A{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto& row = A[2 * i + j];
            for (int k = 0; k < 2; ++k) {
                row[2 * i + k] = F.add(row[2 * i + k], m[2 * k + j]);
                row[2 * k + j] = F.sub(row[2 * k + j], n[2 * i + k]);
            }
        }
    std::vector<Mat2> out;
    for (auto& v : nullspace4(F, A)) out.push_back({v[0], v[1], v[2], v[3]});
    return out;
}

}  // namespace detail

/// Some g in PGL2 with g M g^-1 = N in PSL2 (N may be matched up to sign).
inline PglElement conjugator(const PrimeField& F, const Mat2& M, const Mat2& N) {
    const u32 tm = trace(F, M);
    for (int sgn : {1, -1}) {
        Mat2 target = sgn == 1 ? N : negate(F, N);
        if (trace(F, target) != tm) continue;
        auto basis = detail::intertwiners(F, M, target);
        auto try_g = [&](const Mat2& g) -> std::optional<PglElement> {
            u32 dt = det(F, g);
            if (dt == 0) return std::nullopt;
            return PglElement{normalize_pgl(F, g), F.legendre(dt)};
        };
        for (auto& g : basis)
            if (auto r = try_g(g)) return *r;
        // det(b_i + lam b_j) is quadratic in lam: three values suffice.
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                if (i == j) continue;
                for (u32 lam = 1; lam <= 3 && lam < F.p(); ++lam) {
                    const Mat2& x = basis[i];
                    Mat2 y = scale(F, basis[j], lam);
                    Mat2 s{F.add(x.a, y.a), F.add(x.b, y.b), F.add(x.c, y.c), F.add(x.d, y.d)};
                    if (auto r = try_g(s)) return *r;
                }
            }
        if (basis.size() == 4) return {identity_mat(), 1};
    }
    throw std::invalid_argument("conjugator: not conjugate");
}

/// Every g in SL2 with g M g^-1 = N exactly (M non-scalar).  O(p^2).
inline std::vector<Mat2> sl2_conjugators(const PrimeField& F, const Mat2& M, const Mat2& N) {
    if (is_scalar(M)) throw std::invalid_argument("sl2_conjugators: scalar input");
    if (trace(F, M) != trace(F, N)) return {};
    PglElement g0;
    try {
        g0 = conjugator(F, M, N);
    } catch (const std::invalid_argument&) {
        return {};
    }
    // solution space is g0 * span{I, M}
    Mat2 h = mul(F, g0.g, M);
    const u32 t = trace(F, M), d0 = det(F, g0.g);
    std::vector<Mat2> out;
    for (u32 al = 0; al < F.p(); ++al)
        for (u32 be = 0; be < F.p(); ++be) {
            u32 nrm = F.add(F.add(F.mul(al, al), F.mul(t, F.mul(al, be))), F.mul(be, be));
            if (F.mul(d0, nrm) != 1) continue;
            Mat2 x = scale(F, g0.g, al), y = scale(F, h, be);
            out.push_back({F.add(x.a, y.a), F.add(x.b, y.b), F.add(x.c, y.c), F.add(x.d, y.d)});
        }
    return out;
}

/// Exact SL2-conjugacy.  Semisimple classes are determined by the trace;
/// a non-central unipotent class also needs a square-determinant conjugator.
inline bool sl2_conjugate(const PrimeField& F, const Mat2& M, const Mat2& N) {
    if (is_scalar(M) || is_scalar(N)) return M == N;
    if (trace(F, M) != trace(F, N)) return false;
    u32 t = trace(F, M);
    if (F.sub(F.mul(t, t), 4) != 0) return true;
    return conjugator(F, M, N).det_class == 1;
}

// ---------------------------------------------------------------------------
// group adapters for the generic braid engine

struct SL2Group {
    PrimeField F;
    using element = Mat2;
    element mul(const element& x, const element& y) const { return charquo::mul(F, x, y); }
    element inv(const element& x) const { return adj(F, x); }
    element one() const { return identity_mat(); }
    bool equal(const element& x, const element& y) const { return x == y; }
};

struct PSL2Group {
    PrimeField F;
    using element = Mat2;
    element mul(const element& x, const element& y) const { return canon(F, charquo::mul(F, x, y)); }
    element inv(const element& x) const { return canon(F, adj(F, x)); }
    element one() const { return identity_mat(); }
    bool equal(const element& x, const element& y) const { return canon(F, x) == canon(F, y); }
};

}  // namespace charquo
