#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ffield.hpp"

namespace charquo {

namespace detail {
inline i64 add_ck(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("laurent: coefficient overflow");
    return r;
}
inline i64 mul_ck(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("laurent: coefficient overflow");
    return r;
}
}  // namespace detail

struct Monomial {
    int eq = 0, es = 0;
    auto operator<=>(const Monomial&) const = default;
};

/// Element of Z[q^{+-1}, s^{+-1}] as a sorted list of nonzero terms.
class LaurentPoly2 {
public:
    struct Term {
        Monomial m;
        i64 c;
        bool operator==(const Term&) const = default;
    };

    LaurentPoly2() = default;
    LaurentPoly2(i64 c) {  // NOLINT: integers embed implicitly
        if (c) t_.push_back({{0, 0}, c});
    }

    static LaurentPoly2 monomial(i64 c, int eq, int es) {
        LaurentPoly2 r;
        if (c) r.t_.push_back({{eq, es}, c});
        return r;
    }
    static LaurentPoly2 q(int e = 1) { return monomial(1, e, 0); }
    static LaurentPoly2 s(int e = 1) { return monomial(1, 0, e); }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_monomial() const { return t_.size() == 1; }

    bool operator==(const LaurentPoly2&) const = default;

    LaurentPoly2 operator-() const {
        LaurentPoly2 r = *this;
        for (auto& t : r.t_) t.c = detail::mul_ck(t.c, -1);
        return r;
    }

    friend LaurentPoly2 operator+(const LaurentPoly2& x, const LaurentPoly2& y) {
        LaurentPoly2 r;
        r.t_.reserve(x.t_.size() + y.t_.size());
        auto i = x.t_.begin(), j = y.t_.begin();
        while (i != x.t_.end() || j != y.t_.end()) {
            if (j == y.t_.end() || (i != x.t_.end() && i->m < j->m)) {
                r.t_.push_back(*i++);
            } else if (i == x.t_.end() || j->m < i->m) {
                r.t_.push_back(*j++);
            } else {
                i64 c = detail::add_ck(i->c, j->c);
                if (c) r.t_.push_back({i->m, c});
                ++i, ++j;
            }
        }
        return r;
    }
    friend LaurentPoly2 operator-(const LaurentPoly2& x, const LaurentPoly2& y) { return x + (-y); }

    friend LaurentPoly2 operator*(const LaurentPoly2& x, const LaurentPoly2& y) {
        if (x.is_zero() || y.is_zero()) return {};
        std::vector<Term> acc;
        acc.reserve(x.t_.size() * y.t_.size());
        for (const auto& a : x.t_)
            for (const auto& b : y.t_)
                acc.push_back({{a.m.eq + b.m.eq, a.m.es + b.m.es}, detail::mul_ck(a.c, b.c)});
        return from_unsorted(std::move(acc));
    }

    LaurentPoly2& operator+=(const LaurentPoly2& y) { return *this = *this + y; }
    LaurentPoly2& operator-=(const LaurentPoly2& y) { return *this = *this - y; }
    LaurentPoly2& operator*=(const LaurentPoly2& y) { return *this = *this * y; }

    LaurentPoly2 pow(unsigned e) const {
        LaurentPoly2 r(1), b = *this;
        for (; e; e >>= 1) {
            if (e & 1) r *= b;
            if (e > 1) b *= b;
        }
        return r;
    }

    /// Ring involution q -> q^-1, s -> s^-1.
    LaurentPoly2 bar() const {
        std::vector<Term> v = t_;
        for (auto& t : v) t.m = {-t.m.eq, -t.m.es};
        return from_unsorted(std::move(v));
    }

    LaurentPoly2 shift(int eq, int es) const {
        LaurentPoly2 r = *this;
        for (auto& t : r.t_) t.m.eq += eq, t.m.es += es;
        return r;
    }

    i64 content() const {
        i64 g = 0;
        for (const auto& t : t_) g = std::gcd(g, t.c < 0 ? -t.c : t.c);
        return g;
    }

    /// Exact integer division of every coefficient.
    LaurentPoly2 div_int(i64 d) const {
        LaurentPoly2 r = *this;
        for (auto& t : r.t_) {
            if (t.c % d) throw std::domain_error("laurent: inexact integer division");
            t.c /= d;
        }
        return r;
    }

    Monomial min_q_min_s() const {
        Monomial m{t_.front().m.eq, t_.front().m.es};
        for (const auto& t : t_) m.eq = std::min(m.eq, t.m.eq), m.es = std::min(m.es, t.m.es);
        return m;
    }

    /// Quotient when y divides *this in the Laurent ring, else nullopt.
    std::optional<LaurentPoly2> divide_exact(const LaurentPoly2& y) const {
        if (y.is_zero()) throw std::domain_error("laurent: division by zero");
        if (is_zero()) return LaurentPoly2{};
        // Lex order on (eq, es): quotient terms run from lead(x)-lead(y)
        // down to trail(x)-trail(y).
        const Term yl = y.t_.back();
        // Per-variable minimal degrees also add, which keeps the loop finite.
        const Monomial floor{t_.front().m.eq - y.t_.front().m.eq, t_.front().m.es - y.t_.front().m.es};
        const Monomial mx = min_q_min_s(), my = y.min_q_min_s();
        const Monomial box{mx.eq - my.eq, mx.es - my.es};
        LaurentPoly2 rem = *this, quo;
        while (!rem.is_zero()) {
            const Term rl = rem.t_.back();
            Monomial m{rl.m.eq - yl.m.eq, rl.m.es - yl.m.es};
            if (m < floor || m.eq < box.eq || m.es < box.es || rl.c % yl.c) return std::nullopt;
            LaurentPoly2 t = monomial(rl.c / yl.c, m.eq, m.es);
            quo += t;
            rem -= t * y;
        }
        return quo;
    }

    /// Value at (q0, s0) in F; both must be nonzero.
    u32 eval(const PrimeField& F, u32 q0, u32 s0) const {
        if (q0 == 0 || s0 == 0) throw std::domain_error("laurent: evaluation at q0 = 0 or s0 = 0");
        const u32 qi = F.inv(q0), si = F.inv(s0);
        u32 acc = 0;
        for (const auto& t : t_) {
            u32 c = F.reduce(t.c);
            u32 a = t.m.eq >= 0 ? F.pow(q0, t.m.eq) : F.pow(qi, -(i64)t.m.eq);
            u32 b = t.m.es >= 0 ? F.pow(s0, t.m.es) : F.pow(si, -(i64)t.m.es);
            acc = F.add(acc, F.mul(c, F.mul(a, b)));
        }
        return acc;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const i64 c = it->c, a = c < 0 ? -c : c;
            if (it == t_.rbegin())
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            std::vector<std::string> f;
            if (a != 1 || (it->m.eq == 0 && it->m.es == 0)) f.push_back(std::to_string(a));
            if (it->m.eq) f.push_back(it->m.eq == 1 ? "q" : "q^" + std::to_string(it->m.eq));
            if (it->m.es) f.push_back(it->m.es == 1 ? "s" : "s^" + std::to_string(it->m.es));
            for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "*" : "") << f[i];
        }
        return os.str();
    }

private:
    std::vector<Term> t_;  // ascending by monomial, no zero coefficients

    static LaurentPoly2 from_unsorted(std::vector<Term> v) {
        std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
        LaurentPoly2 r;
        for (const auto& t : v) {
            if (!r.t_.empty() && r.t_.back().m == t.m)
                r.t_.back().c = detail::add_ck(r.t_.back().c, t.c);
            else
                r.t_.push_back(t);
            if (r.t_.back().c == 0) r.t_.pop_back();
        }
        return r;
    }
};

using LP = LaurentPoly2;

/// Quotient num/den of Laurent polynomials.  Reduced by integer content and
/// by a monomial so the denominator has minimal exponents zero and positive
/// leading coefficient; no polynomial gcd is taken.
class RationalFn2 {
public:
    RationalFn2() : num_(), den_(1) {}
    RationalFn2(const LP& n) : num_(n), den_(1) {}  // NOLINT
    RationalFn2(i64 c) : num_(c), den_(1) {}         // NOLINT
    RationalFn2(const LP& n, const LP& d) : num_(n), den_(d) {
        if (den_.is_zero()) throw std::domain_error("rational: zero denominator");
        reduce();
    }

    const LP& num() const { return num_; }
    const LP& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const RationalFn2& x, const RationalFn2& y) { return x.num_ * y.den_ == y.num_ * x.den_; }

    friend RationalFn2 operator+(const RationalFn2& x, const RationalFn2& y) {
        if (x.den_ == y.den_) return {x.num_ + y.num_, x.den_};
        return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
    }
    friend RationalFn2 operator-(const RationalFn2& x, const RationalFn2& y) { return x + (-y); }
    RationalFn2 operator-() const { return {-num_, den_}; }
    friend RationalFn2 operator*(const RationalFn2& x, const RationalFn2& y) {
        return {x.num_ * y.num_, x.den_ * y.den_};
    }
    friend RationalFn2 operator/(const RationalFn2& x, const RationalFn2& y) {
        if (y.is_zero()) throw std::domain_error("rational: division by zero");
        return {x.num_ * y.den_, x.den_ * y.num_};
    }
    RationalFn2& operator+=(const RationalFn2& y) { return *this = *this + y; }
    RationalFn2& operator*=(const RationalFn2& y) { return *this = *this * y; }

    RationalFn2 bar() const { return {num_.bar(), den_.bar()}; }

    /// Laurent polynomial when the denominator divides the numerator.
    std::optional<LP> as_laurent() const { return num_.divide_exact(den_); }

    u32 eval(const PrimeField& F, u32 q0, u32 s0) const {
        u32 d = den_.eval(F, q0, s0);
        if (d == 0) throw std::domain_error("denominator vanishes");
        return F.div(num_.eval(F, q0, s0), d);
    }

    std::string to_string() const {
        if (den_ == LP(1)) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    LP num_, den_;

    void reduce() {
        if (num_.is_zero()) {
            den_ = LP(1);
            return;
        }
        Monomial m = den_.min_q_min_s();
        den_ = den_.shift(-m.eq, -m.es);
        num_ = num_.shift(-m.eq, -m.es);
        i64 g = std::gcd(num_.content(), den_.content());
        if (den_.terms().back().c < 0) g = -g;
        if (g != 1) {
            num_ = num_.div_int(g);
            den_ = den_.div_int(g);
        }
        if (auto qt = num_.divide_exact(den_)) {
            num_ = *qt;
            den_ = LP(1);
        }
    }
};

// ---------------------------------------------------------------------------
// dense matrices over a ring

template <class T>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matrix: shape mismatch");
        Matrix r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (x(i, k) == T{}) continue;
                for (std::size_t j = 0; j < y.cols; ++j)
                    if (!(y(k, j) == T{})) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        Matrix r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    template <class Fn>
    Matrix map(Fn fn) const {
        Matrix r(rows, cols);
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fn(a[i]);
        return r;
    }

    Matrix scaled(const T& c) const {
        return map([&](const T& x) { return x * c; });
    }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const T& x) { return x == T{}; });
    }

    /// The scalar lambda with *this = lambda I, if any.
    std::optional<T> scalar_value() const {
        if (rows != cols || rows == 0) return std::nullopt;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (i != j && !((*this)(i, j) == T{})) return std::nullopt;
        for (std::size_t i = 1; i < rows; ++i)
            if (!((*this)(i, i) == (*this)(0, 0))) return std::nullopt;
        return (*this)(0, 0);
    }
};

using LMatrix = Matrix<LP>;
using RMatrix = Matrix<RationalFn2>;

inline LMatrix bar(const LMatrix& m) {
    return m.map([](const LP& x) { return x.bar(); });
}

/// x = c * y for some nonzero Laurent c (x, y nonzero).
inline bool proportional(const LMatrix& x, const LMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    std::size_t k = 0;
    while (k < y.a.size() && y.a[k].is_zero()) ++k;
    if (k == y.a.size()) return false;
    if (x.a[k].is_zero()) return false;
    // x * y_k = y * x_k entrywise
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (!(x.a[i] * y.a[k] == y.a[i] * x.a[k])) return false;
    return true;
}

struct DetAdj {
    LP det;
    LMatrix adj;  // adj * m = m * adj = det I
};

/// Determinant and adjugate by fraction-free Gauss-Jordan elimination.
inline DetAdj det_adjugate(const LMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det_adjugate: square matrix required");
    const std::size_t n = m.rows;
    LMatrix w(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
        w(i, n + i) = LP(1);
    }
    LP prev(1);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && w(piv, k).is_zero()) ++piv;
        if (piv == n) return {LP{}, LMatrix(n, n)};  // singular; adjugate not needed downstream
        if (piv != k) {
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(w(piv, j), w(k, j));
            sign = -sign;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                LP v = w(k, k) * w(i, j) - w(i, k) * w(k, j);
                auto qt = v.divide_exact(prev);
                if (!qt) throw std::logic_error("det_adjugate: inexact Bareiss step");
                w(i, j) = *qt;
            }
            w(i, k) = LP{};
        }
        prev = w(k, k);
    }
    DetAdj r{sign == 1 ? prev : -prev, LMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.adj(i, j) = sign == 1 ? w(i, n + j) : -w(i, n + j);
    LMatrix chk = m * r.adj;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(chk(i, j) == (i == j ? r.det : LP{}))) throw std::logic_error("det_adjugate: verification failed");
    return r;
}

// ---------------------------------------------------------------------------
// dense matrices over F_r

using ModMatrix = Matrix<u32>;

inline ModMatrix mod_mul(const PrimeField& F, const ModMatrix& x, const ModMatrix& y) {
    ModMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            u32 v = x(i, k);
            if (!v) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) = F.add(r(i, j), F.mul(v, y(k, j)));
        }
    return r;
}

inline std::size_t mod_rank(const PrimeField& F, ModMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
        std::size_t piv = rank;
        while (piv < m.rows && m(piv, c) == 0) ++piv;
        if (piv == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rank, j));
        const u32 inv = F.inv(m(rank, c));
        for (std::size_t j = 0; j < m.cols; ++j) m(rank, j) = F.mul(m(rank, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == rank || m(i, c) == 0) continue;
            const u32 f = m(i, c);
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(rank, j)));
        }
        ++rank;
    }
    return rank;
}

inline std::optional<ModMatrix> mod_inverse(const PrimeField& F, const ModMatrix& m) {
    const std::size_t n = m.rows;
    ModMatrix w(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
        w(i, n + i) = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && w(piv, c) == 0) ++piv;
        if (piv == n) return std::nullopt;
        for (std::size_t j = 0; j < 2 * n; ++j) std::swap(w(piv, j), w(c, j));
        const u32 inv = F.inv(w(c, c));
        for (std::size_t j = 0; j < 2 * n; ++j) w(c, j) = F.mul(w(c, j), inv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w(i, c) == 0) continue;
            const u32 f = w(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j) w(i, j) = F.sub(w(i, j), F.mul(f, w(c, j)));
        }
    }
    ModMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = w(i, n + j);
    return r;
}

/// x = lambda y for some lambda in F_r^*.
inline bool mod_proportional(const PrimeField& F, const ModMatrix& x, const ModMatrix& y) {
    std::size_t k = 0;
    while (k < y.a.size() && y.a[k] == 0) ++k;
    if (k == y.a.size() || x.a[k] == 0) return false;
    const u32 lam = F.div(x.a[k], y.a[k]);
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (x.a[i] != F.mul(lam, y.a[i])) return false;
    return true;
}

inline ModMatrix specialize(const PrimeField& F, const LMatrix& m, u32 q0, u32 s0) {
    ModMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].eval(F, q0, s0);
    return r;
}

}  // namespace charquo
