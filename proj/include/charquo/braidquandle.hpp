#pragma once

// Equivariant quandle a <| b = a b^-1 a and the induced B4 action on G^4.
//
// Group interface expected from G:
//   typename G::element;  mul(x, y); inv(x); one(); equal(x, y)

#include <array>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace charquo {

template <class E>
using Quad = std::array<E, 4>;

/// Letters are +-1, +-2, +-3 (sign = exponent of sigma_i).
using BraidWord = std::vector<int>;

template <class G>
typename G::element triangle(const G& g, const typename G::element& a, const typename G::element& b) {
    return g.mul(g.mul(a, g.inv(b)), a);
}

template <class G>
Quad<typename G::element> apply_letter(const G& g, int letter, const Quad<typename G::element>& q) {
    const auto& [a, b, c, d] = q;
    switch (letter) {
        case 1: return {triangle(g, a, b), a, c, d};
        case 2: return {a, triangle(g, b, c), b, d};
        case 3: return {a, b, triangle(g, c, d), c};
        case -1: return {b, triangle(g, b, a), c, d};
        case -2: return {a, c, triangle(g, c, b), d};
        case -3: return {a, b, d, triangle(g, d, c)};
        default: throw std::invalid_argument("apply_letter: bad letter " + std::to_string(letter));
    }
}

/// Leftmost letter acts first.
template <class G>
Quad<typename G::element> apply_word(const G& g, const BraidWord& w, Quad<typename G::element> q) {
    for (int l : w) q = apply_letter(g, l, q);
    return q;
}

template <class G>
typename G::element gamma(const G& g, const Quad<typename G::element>& q) {
    return g.mul(g.mul(q[0], g.inv(q[1])), g.mul(q[2], g.inv(q[3])));
}

template <class G>
typename G::element delta(const G& g, const Quad<typename G::element>& q) {
    return g.mul(g.mul(g.inv(q[0]), q[1]), g.mul(g.inv(q[2]), q[3]));
}

template <class E>
Quad<E> epsilon(const Quad<E>& q) {
    return {q[3], q[2], q[1], q[0]};
}

template <class G>
Quad<typename G::element> left_mul(const G& g, const typename G::element& x, const Quad<typename G::element>& q) {
    return {g.mul(x, q[0]), g.mul(x, q[1]), g.mul(x, q[2]), g.mul(x, q[3])};
}

template <class G>
Quad<typename G::element> right_mul(const G& g, const Quad<typename G::element>& q, const typename G::element& y) {
    return {g.mul(q[0], y), g.mul(q[1], y), g.mul(q[2], y), g.mul(q[3], y)};
}

template <class G>
bool quad_equal(const G& g, const Quad<typename G::element>& x, const Quad<typename G::element>& y) {
    for (int i = 0; i < 4; ++i)
        if (!g.equal(x[i], y[i])) return false;
    return true;
}

inline BraidWord inverse_word(const BraidWord& w) {
    BraidWord r(w.rbegin(), w.rend());
    for (int& l : r) l = -l;
    return r;
}

inline BraidWord concat(BraidWord a, const BraidWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline BraidWord power_word(const BraidWord& w, int k) {
    BraidWord r;
    const BraidWord& base = k >= 0 ? w : inverse_word(w);
    for (int i = 0; i < std::abs(k); ++i) r.insert(r.end(), base.begin(), base.end());
    return r;
}

/// Full twist (s3 s2 s1)^4 as a composite map, so s1 acts first.
inline BraidWord center_word() { return power_word({1, 2, 3}, 4); }

/// Applies the full twist and checks it against gamma Q delta^-1.
template <class G>
Quad<typename G::element> center_image(const G& g, const Quad<typename G::element>& q) {
    auto r = apply_word(g, center_word(), q);
    auto expect = right_mul(g, left_mul(g, gamma(g, q), q), g.inv(delta(g, q)));
    if (!quad_equal(g, r, expect)) throw std::logic_error("center_image: full twist mismatch");
    return r;
}

inline std::string word_to_string(const BraidWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (int l : w) {
        if (!s.empty()) s += ' ';
        s += "s" + std::to_string(std::abs(l));
        if (l < 0) s += "^-1";
    }
    return s;
}

}  // namespace charquo
