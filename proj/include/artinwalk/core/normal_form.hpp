#pragma once

/**
 * @file normal_form.hpp
 * @brief Garside normal forms in A_k and in A_k/Z.
 *
 * An element of A_k is written g_1 ... g_m Delta^delta with g_i in T and
 * Last(g_i) = First(g_{i+1}); this decomposition is unique. Multiplication on
 * the right by a generator only ever touches the last letter of the tail: the
 * powers of Delta are pushed to the right with g.Delta^n = Delta^n.bar^n(g).
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "artinwalk/core/artin.hpp"

namespace artinwalk {

/// One of the Artin generators S = {a, b, a^-1, b^-1}.
enum class ArtinLetter : std::uint8_t { a, b, a_inv, b_inv };

constexpr ArtinLetter artin_inverse(ArtinLetter x) noexcept
{
    switch (x) {
    case ArtinLetter::a: return ArtinLetter::a_inv;
    case ArtinLetter::b: return ArtinLetter::b_inv;
    case ArtinLetter::a_inv: return ArtinLetter::a;
    case ArtinLetter::b_inv: return ArtinLetter::b;
    }
    return x;
}

/// A generator of the form t.Delta^n with t in T u {1}.
struct FullGen {
    std::optional<TGen> t;
    std::int64_t delta_exp = 0;

    friend bool operator==(const FullGen&, const FullGen&) = default;
};

/// x^-1 = bar(x*) Delta^-1 for x in {a, b}.
inline FullGen to_full_gen(ArtinIndex k, ArtinLetter x)
{
    switch (x) {
    case ArtinLetter::a: return {TGen{Letter::a, 1}, 0};
    case ArtinLetter::b: return {TGen{Letter::b, 1}, 0};
    case ArtinLetter::a_inv: return {bar(k, star(k, TGen{Letter::a, 1})), -1};
    case ArtinLetter::b_inv: return {bar(k, star(k, TGen{Letter::b, 1})), -1};
    }
    return {};
}

namespace detail {

inline std::int64_t checked_add(std::int64_t x, std::int64_t y)
{
    std::int64_t out = 0;
    if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("Delta exponent overflow");
    return out;
}

/**
 * Right-multiply a positive normal-form tail by a T-letter. Returns the number
 * of Delta factors (0 or 1) split off to the right of the tail.
 */
inline int append_positive(ArtinIndex k, std::vector<TGen>& tail, TGen t)
{
    if (tail.empty() || tail.back().last() == t.first()) {
        tail.push_back(t);
        return 0;
    }
    TGen& u = tail.back();
    const int s = u.len + t.len;
    if (s < k.value()) {
        u.len = s;
        return 0;
    }
    if (s == k.value()) {
        tail.pop_back();
        return 1;
    }
    // prod(x; s) = prod(x; s-k) . Delta
    u.len = s - k.value();
    return 1;
}

} // namespace detail

/// Garside normal form in the full group A_k.
struct ArtinElement {
    std::vector<TGen> tail;
    std::int64_t delta_exp = 0;

    bool is_identity() const noexcept { return tail.empty() && delta_exp == 0; }

    friend bool operator==(const ArtinElement&, const ArtinElement&) = default;
};

struct ArtinElementHash {
    std::size_t operator()(const ArtinElement& g) const noexcept
    {
        std::size_t h = std::hash<std::int64_t>{}(g.delta_exp);
        for (const TGen& t : g.tail)
            h = h * 1000003u ^ (static_cast<std::size_t>(t.start) * 131u + static_cast<std::size_t>(t.len));
        return h;
    }
};

inline bool tail_adjacent(std::span<const TGen> tail) noexcept
{
    for (std::size_t i = 1; i < tail.size(); ++i)
        if (tail[i - 1].last() != tail[i].first()) return false;
    return true;
}

inline void validate(ArtinIndex k, const ArtinElement& g)
{
    for (const TGen& t : g.tail) check_tgen(k, t);
    if (!tail_adjacent(g.tail)) throw std::invalid_argument("tail violates Last(g_i) = First(g_i+1)");
}

/// g <- g * Delta^n.
inline void multiply_delta(ArtinElement& g, std::int64_t n) { g.delta_exp = detail::checked_add(g.delta_exp, n); }

/// g <- g * t.Delta^n.
inline void multiply_right(ArtinIndex k, ArtinElement& g, const FullGen& x)
{
    std::int64_t shift = x.delta_exp;
    if (x.t) shift = detail::checked_add(shift, detail::append_positive(k, g.tail, bar_pow(k, *x.t, g.delta_exp)));
    multiply_delta(g, shift);
}

inline void multiply_right(ArtinIndex k, ArtinElement& g, ArtinLetter x) { multiply_right(k, g, to_full_gen(k, x)); }

inline void multiply_right(ArtinIndex k, ArtinElement& g, const ArtinElement& h)
{
    for (const TGen& t : h.tail) multiply_right(k, g, FullGen{t, 0});
    multiply_delta(g, h.delta_exp);
}

/// Normal form of a product of generators; solves the word problem in A_k.
inline ArtinElement canonicalize(ArtinIndex k, std::span<const FullGen> word)
{
    ArtinElement g;
    for (const FullGen& x : word) {
        if (x.t) check_tgen(k, *x.t);
        multiply_right(k, g, x);
    }
    return g;
}

inline ArtinElement canonicalize(ArtinIndex k, std::span<const ArtinLetter> word)
{
    ArtinElement g;
    for (ArtinLetter x : word) multiply_right(k, g, x);
    return g;
}

inline ArtinElement inverse(ArtinIndex k, const ArtinElement& g)
{
    // (g_1 ... g_m Delta^d)^-1 = Delta^-d g_m^-1 ... g_1^-1
    ArtinElement out;
    out.delta_exp = -g.delta_exp;
    for (auto it = g.tail.rbegin(); it != g.tail.rend(); ++it)
        multiply_right(k, out, FullGen{bar(k, star(k, *it)), -1});
    return out;
}

/**
 * Garside normal form in A_k/Z: T-letters with a trailing Delta^{0/1}
 * (always Delta^0 for k even). The identity is (empty, false) and the special
 * element Delta is (empty, true).
 */
struct GarsideQuotientWord {
    std::vector<TGen> letters;
    bool delta_flag = false;

    bool is_identity() const noexcept { return letters.empty() && !delta_flag; }
    bool is_delta() const noexcept { return letters.empty() && delta_flag; }
    /// Length as a geodesic word over Sigma; Delta is represented by a.ba.
    std::size_t sigma_length() const noexcept { return letters.empty() ? (delta_flag ? 2u : 0u) : letters.size(); }

    /// The word seen as a sequence over Sigma (flag moved onto the last letter).
    std::vector<SigmaGen> as_sigma_word() const
    {
        std::vector<SigmaGen> out;
        for (const TGen& t : letters) out.push_back({t, false});
        if (!out.empty()) out.back().delta = delta_flag;
        return out;
    }

    friend bool operator==(const GarsideQuotientWord&, const GarsideQuotientWord&) = default;
};

struct GarsideQuotientWordHash {
    std::size_t operator()(const GarsideQuotientWord& w) const noexcept
    {
        std::size_t h = w.delta_flag ? 0x9e3779b9u : 0u;
        for (const TGen& t : w.letters)
            h = h * 1000003u ^ (static_cast<std::size_t>(t.start) * 131u + static_cast<std::size_t>(t.len));
        return h;
    }
};

inline void validate(ArtinIndex k, const GarsideQuotientWord& w)
{
    for (const TGen& t : w.letters) check_tgen(k, t);
    if (!tail_adjacent(w.letters)) throw std::invalid_argument("Garside word violates Last(u_i) = First(u_i+1)");
    if (w.delta_flag && k.even()) throw std::invalid_argument("Delta-flag is not allowed for even k");
}

/// Projection p: A_k -> A_k/Z.
inline GarsideQuotientWord project(ArtinIndex k, const ArtinElement& g)
{
    return {g.tail, k.odd() && (g.delta_exp % 2 != 0)};
}

inline GarsideQuotientWord to_quotient_word(ArtinIndex k, SigmaBar x)
{
    if (x.is_one()) return {};
    if (x.is_delta()) return {{}, k.odd()};
    return {{x.gen.t}, k.odd() && x.gen.delta};
}

/// Normal form of Y * x in A_k/Z.
inline GarsideQuotientWord nf_mult_gen(ArtinIndex k, GarsideQuotientWord y, SigmaBar x)
{
    if (x.is_one()) return y;
    int flips = x.is_delta() || x.gen.delta ? 1 : 0;
    if (x.is_sigma()) {
        const TGen t = bar_pow(k, x.gen.t, y.delta_flag ? 1 : 0);
        flips += detail::append_positive(k, y.letters, t);
    }
    y.delta_flag = k.odd() && (y.delta_flag != (flips % 2 != 0));
    return y;
}

inline GarsideQuotientWord nf_mult_gen(ArtinIndex k, GarsideQuotientWord y, SigmaGen x)
{
    return nf_mult_gen(k, std::move(y), SigmaBar::of(x));
}

/// Membership in the set of Garside geodesics: flags only on the last letter plus adjacency.
inline bool is_garside(ArtinIndex k, std::span<const SigmaGen> w)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i].delta) return false;
        if (last(k, w[i]) != first(w[i + 1])) return false;
    }
    return true;
}

/// Membership in the set of all geodesics over Sigma.
inline bool is_geodesic(ArtinIndex k, std::span<const SigmaGen> w)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (last(k, w[i]) != first(w[i + 1])) return false;
    return true;
}

} // namespace artinwalk
