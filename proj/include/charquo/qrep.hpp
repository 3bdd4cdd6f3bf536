#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffield.hpp"
#include "laurent.hpp"

namespace charquo {

// ---------------------------------------------------------------------------
// q-numbers

inline LP qnum(int n) {
    if (n < 0) throw std::invalid_argument("qnum: n < 0");
    LP r;
    for (int j = 0; j < n; ++j) r += LP::q(n - 1 - 2 * j);
    return r;
}

inline LP qfact(int n) {
    LP r(1);
    for (int k = 1; k <= n; ++k) r *= qnum(k);
    return r;
}

/// [n]!/[m]! for m <= n.
inline LP qfact_ratio(int n, int m) {
    LP r(1);
    for (int k = m + 1; k <= n; ++k) r *= qnum(k);
    return r;
}

inline LP qbinom(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("qbinom: need 0 <= k <= n");
    auto r = qfact(n).divide_exact(qfact(k) * qfact(n - k));
    if (!r) throw std::logic_error("qbinom: inexact division");
    return *r;
}

/// prod_{k=lo}^{hi-1} (s q^-k - s^-1 q^k).
inline LP sfactor_range(int lo, int hi) {
    LP r(1);
    for (int k = lo; k < hi; ++k) r *= LP::monomial(1, -k, 1) - LP::monomial(1, k, -1);
    return r;
}

/// Coefficient of F^(n) v_j = f * v_{j+n}.
inline LP f_coeff(int n, int j) { return qbinom(n + j, j) * sfactor_range(j, j + n); }

/// Polynomials in an auxiliary x with Laurent coefficients, index = power.
using XPoly = std::vector<LP>;

inline XPoly xmul(const XPoly& a, const XPoly& b) {
    XPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// sum_m [t m] x^m = prod_{k<t} (x + q^{1-t+2k}), and for t >= 1 the
/// specialization x = -q^{1-t} vanishes.
inline bool qbinom_identity_check(int t) {
    XPoly lhs(t + 1);
    for (int m = 0; m <= t; ++m) lhs[m] = qbinom(t, m);
    XPoly rhs{LP(1)};
    for (int k = 0; k < t; ++k) rhs = xmul(rhs, {LP::q(1 - t + 2 * k), LP(1)});
    if (lhs != rhs) return false;
    if (t >= 1) {
        LP sum;
        for (int m = 0; m <= t; ++m) sum += (m % 2 ? LP(-1) : LP(1)) * LP::q(m * (1 - t)) * qbinom(t, m);
        if (!sum.is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// the module V and its tensor powers

struct ModuleRelations {
    bool ke = true;       // KE = q^2 EK
    bool e_f = true;      // [E, F^(n+1)] = F^(n)(q^-n K - q^n K^-1)
    int truncation = 0;
};

/// Checks the defining relations on span(v_0..v_top), applying each side to
/// every v_j whose images stay inside the truncation.
inline ModuleRelations module_relations(int top = 6) {
    ModuleRelations r;
    r.truncation = top;
    auto kval = [](int j) { return LP::monomial(1, -2 * j, 1); };
    auto kinv = [](int j) { return LP::monomial(1, 2 * j, -1); };
    for (int j = 1; j <= top; ++j)
        if (!(kval(j - 1) == LP::q(2) * kval(j))) r.ke = false;
    for (int n = 0; n + 1 <= top; ++n)
        for (int j = 0; j + n + 1 <= top; ++j) {
            LP ef = f_coeff(n + 1, j);                              // E F^(n+1) v_j
            LP fe = j >= 1 ? f_coeff(n + 1, j - 1) : LP{};           // F^(n+1) E v_j
            LP rhs = (LP::q(-n) * kval(j) - LP::q(n) * kinv(j)) * f_coeff(n, j);
            if (!(ef - fe == rhs)) r.e_f = false;
        }
    return r;
}

struct RTerm {
    int left, right;
    LP coef;
};

/// R(v_i (x) v_j) as a list of (v_left (x) v_right, coefficient).
inline std::vector<RTerm> r_matrix(int i, int j) {
    std::vector<RTerm> out;
    for (int m = 0; m <= i; ++m) {
        LP c = LP::monomial(1, 2 * (i - m) * (j + m) + m * (m - 1) / 2, -i - j) * f_coeff(m, j);
        if (!c.is_zero()) out.push_back({j + m, i - m, c});
    }
    return out;
}

using Composition = std::vector<int>;

/// Compositions of l into n parts in lexicographic order.
struct WeightBasis {
    int n = 0, l = 0;
    std::vector<Composition> comps;
    std::map<Composition, std::size_t> index;

    std::size_t size() const { return comps.size(); }
    std::size_t at(const Composition& c) const { return index.at(c); }
};

inline WeightBasis weight_basis(int n, int l) {
    if (n < 1 || l < 0) throw std::invalid_argument("weight_basis: need n >= 1, l >= 0");
    WeightBasis b{n, l, {}, {}};
    Composition c(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            c[pos] = left;
            b.comps.push_back(c);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, l);
    for (std::size_t i = 0; i < b.comps.size(); ++i) b.index.emplace(b.comps[i], i);
    return b;
}

inline u64 binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    u64 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// sigma_i (1-based) on V_{n,l}: R on tensor factors i, i+1.  Column c is
/// the image of basis vector c.
inline LMatrix sigma_on_V(const WeightBasis& V, int i) {
    if (i < 1 || i >= V.n) throw std::invalid_argument("sigma_on_V: generator index out of range");
    LMatrix m(V.size(), V.size());
    for (std::size_t c = 0; c < V.size(); ++c) {
        Composition a = V.comps[c];
        for (const auto& t : r_matrix(a[i - 1], a[i])) {
            Composition b = a;
            b[i - 1] = t.left;
            b[i] = t.right;
            m(V.at(b), c) += t.coef;
        }
    }
    return m;
}

/// E : V_{n,l} -> V_{n,l-1} from the coproduct E (x) K + 1 (x) E.
inline LMatrix e_matrix(const WeightBasis& V, const WeightBasis& Vm) {
    LMatrix m(Vm.size(), V.size());
    for (std::size_t c = 0; c < V.size(); ++c) {
        const Composition& a = V.comps[c];
        for (int k = 0; k < V.n; ++k) {
            if (a[k] == 0) continue;
            int qe = 0;
            for (int j = k + 1; j < V.n; ++j) qe -= 2 * a[j];
            Composition b = a;
            --b[k];
            m(Vm.at(b), c) += LP::monomial(1, qe, V.n - 1 - k);
        }
    }
    return m;
}

/// K acting diagonally on V_{n,l}.
inline LMatrix k_matrix(const WeightBasis& V) {
    LMatrix m(V.size(), V.size());
    for (std::size_t c = 0; c < V.size(); ++c) {
        int qe = 0;
        for (int x : V.comps[c]) qe -= 2 * x;
        m(c, c) = LP::monomial(1, qe, V.n);
    }
    return m;
}

/// Reversal v_{a1} (x) ... (x) v_{an} -> v_{an} (x) ... (x) v_{a1}.
inline LMatrix reversal_matrix(const WeightBasis& V) {
    LMatrix m(V.size(), V.size());
    for (std::size_t c = 0; c < V.size(); ++c) {
        Composition r(V.comps[c].rbegin(), V.comps[c].rend());
        m(V.at(r), c) = LP(1);
    }
    return m;
}

/// diag q^{sum a(a+1)}.
inline LMatrix d_matrix(const WeightBasis& V) {
    LMatrix m(V.size(), V.size());
    for (std::size_t c = 0; c < V.size(); ++c) {
        int e = 0;
        for (int x : V.comps[c]) e += x * (x + 1);
        m(c, c) = LP::q(e);
    }
    return m;
}

// ---------------------------------------------------------------------------
// highest weight space

/// Basis of W_{n,l} = ker E in V_{n,l}.  The coordinates with a_n = 0 are
/// free; every other coordinate is fixed by E = 0 through
///   c_{b+e_n} = - sum_{k<n} c_{b+e_k} prod_{j>k} s q^{-2 b_j}.
/// Basis vector f has coordinate 1 at its free composition and 0 at the
/// other free ones.
struct HighestWeightBasis {
    WeightBasis V;
    std::vector<std::size_t> free_index;  // V-index of each W basis vector
    LMatrix B;                            // dim V x dim W, columns are the basis

    std::size_t dim() const { return free_index.size(); }
};

inline HighestWeightBasis highest_weight_basis(int n, int l) {
    if (n < 2) throw std::invalid_argument("highest_weight_basis: need n >= 2");
    HighestWeightBasis h{weight_basis(n, l), {}, {}};
    const WeightBasis& V = h.V;
    for (std::size_t i = 0; i < V.size(); ++i)
        if (V.comps[i][n - 1] == 0) h.free_index.push_back(i);
    std::vector<std::size_t> order(V.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return V.comps[x][n - 1] < V.comps[y][n - 1]; });

    h.B = LMatrix(V.size(), h.free_index.size());
    for (std::size_t f = 0; f < h.free_index.size(); ++f) {
        h.B(h.free_index[f], f) = LP(1);
        for (std::size_t idx : order) {
            Composition a = V.comps[idx];
            if (a[n - 1] == 0) continue;
            Composition b = a;
            --b[n - 1];
            LP acc;
            for (int k = 0; k < n - 1; ++k) {
                Composition src = b;
                ++src[k];
                int qe = 0;
                for (int j = k + 1; j < n; ++j) qe -= 2 * b[j];
                const LP& cs = h.B(V.at(src), f);
                if (!cs.is_zero()) acc += cs * LP::monomial(1, qe, n - 1 - k);
            }
            h.B(idx, f) = -acc;
        }
    }
    if (l >= 1 && !(e_matrix(V, weight_basis(n, l - 1)) * h.B).is_zero())
        throw std::logic_error("highest_weight_basis: basis not annihilated by E");
    if (h.dim() != binomial(n + l - 2, l)) throw std::logic_error("highest_weight_basis: dimension mismatch");
    return h;
}

// ---------------------------------------------------------------------------
// braid matrices on W

struct RepMatrices {
    int n = 0, l = 0;
    HighestWeightBasis W;
    std::vector<LMatrix> sigma_V;  // sigma_1..sigma_{n-1} on V_{n,l}
    std::vector<LMatrix> sigma;    // restricted to W

    std::size_t dim() const { return W.dim(); }
};

template <class M, class Mul>
bool braid_relations_hold(const std::vector<M>& g, Mul mul) {
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (j == i + 1) {
                if (!(mul(mul(g[i], g[j]), g[i]) == mul(mul(g[j], g[i]), g[j]))) return false;
            } else if (!(mul(g[i], g[j]) == mul(g[j], g[i]))) {
                return false;
            }
        }
    return true;
}

inline bool braid_relations_hold(const std::vector<LMatrix>& g) {
    return braid_relations_hold(g, [](const LMatrix& x, const LMatrix& y) { return x * y; });
}

inline RepMatrices braid_matrices(int n, int l) {
    RepMatrices r{n, l, highest_weight_basis(n, l), {}, {}};
    const auto& W = r.W;
    for (int i = 1; i < n; ++i) {
        LMatrix S = sigma_on_V(W.V, i);
        LMatrix SB = S * W.B;
        LMatrix M(W.dim(), W.dim());
        for (std::size_t g = 0; g < W.dim(); ++g)
            for (std::size_t f = 0; f < W.dim(); ++f) M(g, f) = SB(W.free_index[g], f);
        if (!(W.B * M == SB)) throw std::logic_error("braid_matrices: W not invariant under sigma");
        r.sigma_V.push_back(std::move(S));
        r.sigma.push_back(std::move(M));
    }
    if (!braid_relations_hold(r.sigma)) throw std::logic_error("braid_matrices: braid relations fail");
    return r;
}

inline LMatrix word_matrix(const RepMatrices& r, const std::vector<int>& word) {
    LMatrix m = LMatrix::identity(r.dim());
    for (int g : word) {
        if (g < 1 || g >= r.n) throw std::invalid_argument("word_matrix: only positive generators");
        m = m * r.sigma[g - 1];
    }
    return m;
}

/// (sigma_1 ... sigma_{n-1})^n.
inline LMatrix full_twist(const RepMatrices& r) {
    std::vector<int> w;
    for (int k = 0; k < r.n; ++k)
        for (int i = 1; i < r.n; ++i) w.push_back(i);
    return word_matrix(r, w);
}

inline LP w2_eigenvalue_formula(int l) {
    return LP::monomial(l % 2 ? -1 : 1, l * (l - 1), -2 * l);
}

struct DecompositionCheck {
    bool binomial_ok = false;
    bool filtration_ok = false;
    std::vector<std::size_t> block_dims;  // by first coordinate l, l-1, ..., 0
};

/// Dimension identity C(n+l-2, l) = sum_k C(n+k-3, k), and the span of
/// basis vectors with first coordinate <= t is invariant under
/// sigma_2..sigma_{n-1} for every t.
inline DecompositionCheck decomposition_check(const RepMatrices& r) {
    if (r.n < 3) throw std::invalid_argument("decomposition_check: need n >= 3");
    DecompositionCheck d;
    u64 sum = 0;
    for (int k = 0; k <= r.l; ++k) sum += binomial(r.n + k - 3, k);
    d.binomial_ok = sum == binomial(r.n + r.l - 2, r.l);
    const auto& W = r.W;
    auto first = [&](std::size_t f) { return W.V.comps[W.free_index[f]][0]; };
    d.block_dims.assign(r.l + 1, 0);
    for (std::size_t f = 0; f < W.dim(); ++f) ++d.block_dims[r.l - first(f)];
    bool ok = true;
    for (int k = 0; k <= r.l; ++k) ok = ok && d.block_dims[k] == binomial(r.n + k - 3, k);
    for (std::size_t i = 1; i < r.sigma.size(); ++i)
        for (std::size_t g = 0; g < W.dim(); ++g)
            for (std::size_t f = 0; f < W.dim(); ++f)
                if (first(g) > first(f) && !r.sigma[i](g, f).is_zero()) ok = false;
    d.filtration_ok = ok;
    return d;
}

// ---------------------------------------------------------------------------
// hermitian form, bar symmetry, intertwiner

/// (v_n, v_n) = (q - q^-1)^n / ([n]! prod_{k<n} (s q^-k - s^-1 q^k)).
inline RationalFn2 hermitian_diag(int n) {
    return RationalFn2((LP::q(1) - LP::q(-1)).pow(n), qfact(n) * sfactor_range(0, n));
}

/// Exact form matrix on V_{n,l}: (e_I, e_J) = [J = reverse I] prod h_{I_k}.
inline RMatrix hermitian_form_exact(const WeightBasis& V) {
    RMatrix H(V.size(), V.size());
    LMatrix T = reversal_matrix(V);
    for (std::size_t i = 0; i < V.size(); ++i) {
        RationalFn2 v(1);
        for (int x : V.comps[i]) v *= hermitian_diag(x);
        for (std::size_t j = 0; j < V.size(); ++j)
            if (!T(j, i).is_zero()) H(i, j) = v;
    }
    return H;
}

/// The form times ([l]! prod_{k<l}(s q^-k - s^-1 q^k))^n, which is integral.
inline LMatrix hermitian_form(const WeightBasis& V) {
    const int l = V.l;
    LMatrix H(V.size(), V.size());
    for (std::size_t i = 0; i < V.size(); ++i) {
        LP v(1);
        for (int x : V.comps[i]) v *= (LP::q(1) - LP::q(-1)).pow(x) * qfact_ratio(l, x) * sfactor_range(x, l);
        Composition r(V.comps[i].rbegin(), V.comps[i].rend());
        H(i, V.at(r)) = v;
    }
    return H;
}

inline LP hermitian_scale(int n, int l) { return (qfact(l) * sfactor_range(0, l)).pow(n); }

/// sigma_i^T H bar(sigma_{n-i}) = H for every i.
inline bool hermitian_identities(const std::vector<LMatrix>& sig, const LMatrix& H) {
    const std::size_t m = sig.size();
    for (std::size_t i = 0; i < m; ++i)
        if (!(sig[i].transpose() * H * bar(sig[m - 1 - i]) == H)) return false;
    return true;
}

/// L sigma_i^-1 L^-1 = bar(sigma_{n-i}) with L = D T, checked as
/// L = bar(sigma_{n-i}) L sigma_i.
inline bool bar_symmetry(const WeightBasis& V, const std::vector<LMatrix>& sigV) {
    const LMatrix L = d_matrix(V) * reversal_matrix(V);
    const std::size_t m = sigV.size();
    for (std::size_t i = 0; i < m; ++i)
        if (!(bar(sigV[m - 1 - i]) * L * sigV[i] == L)) return false;
    return true;
}

/// Diagonal J_V with sigma J_V = J_V sigma^T on V_{n,l}:
/// entries prod_k q^{-a_k^2} [a_k]! prod_{j<a_k}(s q^-j - s^-1 q^j).
inline LMatrix diagonal_intertwiner_V(const WeightBasis& V) {
    LMatrix J(V.size(), V.size());
    for (std::size_t i = 0; i < V.size(); ++i) {
        LP v(1);
        for (int x : V.comps[i]) v *= LP::q(-x * x) * qfact(x) * sfactor_range(0, x);
        J(i, i) = v;
    }
    return J;
}

/// Invariant bilinear form on V_{n,l}, proportional to the inverse of
/// diagonal_intertwiner_V and scaled to be integral.  Each diagonal entry
/// of the intertwiner is a product of the factors [m] (m >= 2) and
/// (s q^-k - s^-1 q^k) times a power of q; the scale is the product of
/// every factor at its largest multiplicity over the basis.
inline LMatrix invariant_gram_V(const WeightBasis& V) {
    // factor keys: (0, m) for [m], (1, k) for the s-factor
    using Key = std::pair<int, int>;
    auto factors = [](const Composition& a) {
        std::map<Key, int> f;
        for (int x : a) {
            for (int m = 2; m <= x; ++m) ++f[{0, m}];
            for (int k = 0; k < x; ++k) ++f[{1, k}];
        }
        return f;
    };
    std::map<Key, int> lcm;
    for (const auto& a : V.comps)
        for (const auto& [k, e] : factors(a)) lcm[k] = std::max(lcm[k], e);
    auto factor_poly = [](const Key& k) {
        return k.first == 0 ? qnum(k.second) : sfactor_range(k.second, k.second + 1);
    };
    LMatrix G(V.size(), V.size());
    for (std::size_t i = 0; i < V.size(); ++i) {
        auto f = factors(V.comps[i]);
        int qe = 0;
        for (int x : V.comps[i]) qe += x * x;
        LP v = LP::q(qe);
        for (const auto& [k, e] : lcm) v *= factor_poly(k).pow(e - (f.count(k) ? f.at(k) : 0));
        G(i, i) = v;
    }
    return G;
}

struct Intertwiner {
    LMatrix J;
    bool nonsingular = false;  // det J nonzero at a sample point of F_r
    int symmetry = 0;  // +1 if J = J^T, -1 if J = -J^T, 0 otherwise
};

inline LMatrix strip_common_factor(const LMatrix& m) {
    i64 g = 0;
    std::optional<Monomial> lo;
    for (const auto& x : m.a) {
        if (x.is_zero()) continue;
        g = std::gcd(g, x.content());
        Monomial mm = x.min_q_min_s();
        lo = lo ? Monomial{std::min(lo->eq, mm.eq), std::min(lo->es, mm.es)} : mm;
    }
    if (!lo) return m;
    return m.map([&](const LP& x) { return x.div_int(g).shift(-lo->eq, -lo->es); });
}

/// J on W with J sigma_i^T = sigma_i J, as the adjugate of the restricted
/// invariant form.  Throws if any identity fails.
inline Intertwiner intertwiner_J(const RepMatrices& r) {
    const LMatrix& B = r.W.B;
    const LMatrix Gw = B.transpose() * invariant_gram_V(r.W.V) * B;
    DetAdj da = det_adjugate(Gw);
    if (da.det.is_zero()) throw std::logic_error("intertwiner_J: restricted form is degenerate");
    Intertwiner out;
    out.J = strip_common_factor(da.adj);
    for (const auto& s : r.sigma)
        if (!(out.J * s.transpose() == s * out.J)) throw std::logic_error("intertwiner_J: J does not intertwine");
    const LMatrix Jt = out.J.transpose();
    out.symmetry = out.J == Jt ? 1 : (out.J == Jt.scaled(LP(-1)) ? -1 : 0);
    const PrimeField F(1000003);
    out.nonsingular = mod_inverse(F, specialize(F, out.J, 4567, 8901)).has_value();
    return out;
}

/// phi(sigma_i) sigma_i = 1 for phi(A) = J (A^T)^-1 J^-1, evaluated
/// literally at sample points of F_r.  Symbolically it is equivalent to
/// J sigma_i^T = sigma_i J, which intertwiner_J checks exactly.
inline bool phi_inverts_generators(const RepMatrices& r, const Intertwiner& J) {
    const PrimeField F(1000003);
    const u32 pts[][2] = {{12345, 67891}, {271828, 314159}, {1618, 2718}};
    for (const auto& p : pts) {
        auto j = specialize(F, J.J, p[0], p[1]);
        auto ji = mod_inverse(F, j);
        if (!ji) continue;
        for (const auto& sL : r.sigma) {
            auto s = specialize(F, sL, p[0], p[1]);
            auto sti = mod_inverse(F, s.transpose());
            if (!sti) return false;
            ModMatrix phi = mod_mul(F, mod_mul(F, j, *sti), *ji);
            auto one = mod_mul(F, phi, s).scalar_value();
            if (!one || *one != 1) return false;
        }
    }
    return true;
}

/// Rank of the linear system {X sigma_i^T = sigma_i X} specialized at a
/// point of F_r.  Rank dim^2 - 1 at any point forces the generic solution
/// space to be one-dimensional.
inline std::size_t intertwiner_system_rank(const RepMatrices& r, const PrimeField& F, u32 q0, u32 s0) {
    const std::size_t N = r.dim();
    ModMatrix sys(N * N * r.sigma.size(), N * N);
    std::size_t row = 0;
    for (const auto& sL : r.sigma) {
        ModMatrix s = specialize(F, sL, q0, s0);
        // (X s^T - s X)_{ij} = sum_k X_ik s_jk - sum_k s_ik X_kj
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j, ++row) {
                for (std::size_t k = 0; k < N; ++k) {
                    sys(row, i * N + k) = F.add(sys(row, i * N + k), s(j, k));
                    sys(row, k * N + j) = F.sub(sys(row, k * N + j), s(i, k));
                }
            }
    }
    return mod_rank(F, sys);
}

/// Tries a fixed list of points; returns the largest rank seen.
inline std::size_t intertwiner_generic_rank(const RepMatrices& r) {
    const PrimeField F(1000003);
    std::size_t best = 0;
    const u32 pts[][2] = {{12345, 67891}, {271828, 314159}, {1618, 2718}, {999331, 4242}};
    for (const auto& p : pts) {
        best = std::max(best, intertwiner_system_rank(r, F, p[0], p[1]));
        if (best + 1 == r.dim() * r.dim()) break;
    }
    return best;
}

// ---------------------------------------------------------------------------
// specialization

class BadSpecialization : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Specialization {
    u32 r = 0, q0 = 0, s0 = 0;
    std::vector<ModMatrix> sigma;
    std::optional<ModMatrix> J;
    bool relations = false;
    bool sigma1_ne_sigma3 = false;  // projectively
    bool x_nonscalar = false;       // sigma_1 sigma_3^-1
    bool j_intertwines = false;
    bool absolutely_irreducible = false;  // matrix algebra spans all N x N
};

/// Dimension of the algebra generated by the matrices.
inline std::size_t generated_algebra_dim(const PrimeField& F, const std::vector<ModMatrix>& gens) {
    const std::size_t N = gens.front().rows, D = N * N;
    std::vector<std::vector<u32>> basis;  // echelon rows
    std::vector<std::size_t> pivots;
    std::vector<ModMatrix> span;
    auto insert = [&](const ModMatrix& m) {
        std::vector<u32> v = m.a;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            u32 f = v[pivots[b]];
            if (f)
                for (std::size_t j = 0; j < D; ++j) v[j] = F.sub(v[j], F.mul(f, basis[b][j]));
        }
        std::size_t p = 0;
        while (p < D && v[p] == 0) ++p;
        if (p == D) return false;
        u32 inv = F.inv(v[p]);
        for (auto& x : v) x = F.mul(x, inv);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            u32 f = basis[b][p];
            if (f)
                for (std::size_t j = 0; j < D; ++j) basis[b][j] = F.sub(basis[b][j], F.mul(f, v[j]));
        }
        basis.push_back(std::move(v));
        pivots.push_back(p);
        span.push_back(m);
        return true;
    };
    ModMatrix I(N, N);
    for (std::size_t i = 0; i < N; ++i) I(i, i) = 1;
    insert(I);
    for (std::size_t k = 0; k < span.size() && basis.size() < D; ++k)
        for (const auto& g : gens) insert(mod_mul(F, span[k], g));
    return basis.size();
}

inline Specialization specialize(const RepMatrices& rep, u32 r, u32 q0, u32 s0,
                                 const std::optional<Intertwiner>& J = std::nullopt) {
    if (r < 5 || !is_prime_u64(r)) throw std::invalid_argument("specialize: r must be a prime >= 5");
    const PrimeField F(r);
    q0 = F.reduce(q0);
    s0 = F.reduce(s0);
    if (q0 == 0) throw BadSpecialization("bad specialization point: q0 = 0 mod r");
    if (s0 == 0) throw BadSpecialization("bad specialization point: s0 = 0 mod r");
    Specialization sp;
    sp.r = r, sp.q0 = q0, sp.s0 = s0;
    for (std::size_t i = 0; i < rep.sigma.size(); ++i) {
        sp.sigma.push_back(specialize(F, rep.sigma[i], q0, s0));
        if (!mod_inverse(F, sp.sigma.back()))
            throw BadSpecialization("bad specialization point: sigma_" + std::to_string(i + 1) + " singular");
    }
    auto mm = [&](const ModMatrix& x, const ModMatrix& y) { return mod_mul(F, x, y); };
    sp.relations = braid_relations_hold(sp.sigma, mm);
    if (sp.sigma.size() >= 3) {
        sp.sigma1_ne_sigma3 = !mod_proportional(F, sp.sigma[0], sp.sigma[2]);
        ModMatrix x = mm(sp.sigma[0], *mod_inverse(F, sp.sigma[2]));
        sp.x_nonscalar = !x.scalar_value().has_value();
    }
    sp.absolutely_irreducible = generated_algebra_dim(F, sp.sigma) == rep.dim() * rep.dim();
    if (J) {
        ModMatrix j = specialize(F, J->J, q0, s0);
        if (!mod_inverse(F, j)) throw BadSpecialization("bad specialization point: J singular");
        sp.j_intertwines = true;
        for (const auto& s : sp.sigma)
            if (!(mm(j, s.transpose()) == mm(s, j))) sp.j_intertwines = false;
        sp.J = std::move(j);
    }
    return sp;
}

/// Specialized exact hermitian form on V_{n,l}; throws naming the first
/// entry whose denominator vanishes.
inline ModMatrix specialize_hermitian(const WeightBasis& V, u32 r, u32 q0, u32 s0) {
    const PrimeField F(r);
    const RMatrix H = hermitian_form_exact(V);
    ModMatrix out(H.rows, H.cols);
    for (std::size_t i = 0; i < H.rows; ++i)
        for (std::size_t j = 0; j < H.cols; ++j) {
            try {
                out(i, j) = H(i, j).eval(F, F.reduce(q0), F.reduce(s0));
            } catch (const std::domain_error&) {
                throw BadSpecialization("bad specialization point: denominator of H[" + std::to_string(i) + "][" +
                                        std::to_string(j) + "] = " + H(i, j).den().to_string() + " vanishes");
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// verification suite

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct QrepVerification {
    int n = 0, l = 0;
    std::size_t dim_V = 0, dim_W = 0;
    std::vector<CheckResult> checks;
    std::optional<Intertwiner> J;
    std::optional<LP> eigenvalue;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

inline constexpr std::size_t kMaxIntertwinerDim = 10;

inline QrepVerification verify_rep(const RepMatrices& rep, bool with_J = true) {
    QrepVerification v;
    v.n = rep.n, v.l = rep.l;
    v.dim_V = rep.W.V.size();
    v.dim_W = rep.dim();
    auto add = [&](std::string name, bool pass, std::string detail = {}) {
        v.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    const int n = rep.n, l = rep.l;
    const auto& V = rep.W.V;

    add("dim_W", v.dim_W == binomial(n + l - 2, l),
        std::to_string(v.dim_W) + " vs C(" + std::to_string(n + l - 2) + "," + std::to_string(l) + ")");
    {
        // independent kernel dimension: dim V - rank E at a random point
        std::size_t kdim = V.size();
        if (l >= 1) {
            const PrimeField F(1000003);
            kdim -= mod_rank(F, specialize(F, e_matrix(V, weight_basis(n, l - 1)), 4242, 777));
        }
        add("ker_E_dim", kdim == v.dim_W, std::to_string(kdim));
    }
    add("braid_relations_V", braid_relations_hold(rep.sigma_V));
    add("braid_relations_W", braid_relations_hold(rep.sigma));
    {
        const LMatrix K = k_matrix(V);
        bool ok = true;
        for (const auto& s : rep.sigma_V) ok = ok && (s * K == K * s);
        add("sigma_commutes_K", ok);
    }
    if (l >= 1) {
        const LMatrix E = e_matrix(V, weight_basis(n, l - 1));
        const auto Vm = weight_basis(n, l - 1);
        bool ok = true;
        for (int i = 1; i < n; ++i) ok = ok && (E * rep.sigma_V[i - 1] == sigma_on_V(Vm, i) * E);
        add("sigma_commutes_E", ok);
    }
    {
        const PrimeField F(1000003);
        bool ok = true;
        for (const auto& s : rep.sigma) ok = ok && mod_inverse(F, specialize(F, s, 31337, 2718)).has_value();
        add("sigma_invertible", ok);
    }
    {
        auto sc = full_twist(rep).scalar_value();
        add("full_twist_scalar", sc.has_value(), sc ? sc->to_string() : "not scalar");
    }
    if (n == 2) {
        v.eigenvalue = rep.sigma[0](0, 0);
        add("w2_eigenvalue", *v.eigenvalue == w2_eigenvalue_formula(l), v.eigenvalue->to_string());
        bool ok = true;
        for (int i = 0; i <= l; ++i) {
            const LP expect = LP::monomial(i % 2 ? -1 : 1, -i * (i - 1), i);
            ok = ok && rep.W.B(V.at({l - i, i}), 0) == expect;
        }
        add("w2_basis_vector", ok);
    }
    if (n >= 3) {
        DecompositionCheck d = decomposition_check(rep);
        std::string dims;
        for (auto x : d.block_dims) dims += (dims.empty() ? "" : "+") + std::to_string(x);
        add("decomposition_dims", d.binomial_ok, dims);
        add("decomposition_filtration", d.filtration_ok);
    }
    {
        const LMatrix H = hermitian_form(V);
        add("hermitian_V", hermitian_identities(rep.sigma_V, H));
        const LMatrix Hw = rep.W.B.transpose() * H * bar(rep.W.B);
        add("hermitian_W", hermitian_identities(rep.sigma, Hw));
        add("bar_symmetry_DT", bar_symmetry(V, rep.sigma_V));
        const LMatrix JV = diagonal_intertwiner_V(V);
        bool ok = true;
        for (const auto& s : rep.sigma_V) ok = ok && (s * JV == JV * s.transpose());
        add("intertwiner_V", ok);
        const LMatrix L = d_matrix(V) * reversal_matrix(V);
        add("intertwiner_V_from_H_and_L", (H * JV * L.transpose()).scalar_value().has_value());
    }
    if (with_J && v.dim_W <= kMaxIntertwinerDim) {
        try {
            v.J = intertwiner_J(rep);
            add("J_intertwines", true);
            add("J_nonsingular", v.J->nonsingular);
            add("phi_squared_scalar", v.J->symmetry != 0, v.J->symmetry == 1 ? "J = J^T" : "J = -J^T");
            add("phi_inverts_sigma", phi_inverts_generators(rep, *v.J));
            const std::size_t rk = intertwiner_generic_rank(rep);
            add("J_unique", rk + 1 == v.dim_W * v.dim_W, "rank " + std::to_string(rk));
        } catch (const std::logic_error& e) {
            add("J_intertwines", false, e.what());
        }
    }
    return v;
}

}  // namespace charquo
