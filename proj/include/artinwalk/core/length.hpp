#pragma once

/**
 * @file length.hpp
 * @brief Word length over S = {a, b, a^-1, b^-1} read off the Garside normal form.
 *
 * Three regimes, depending on the Delta-exponent delta and the tail length m:
 *  - delta >= 0: the normal form itself is minimal, |g| = sum |g_i| + k.delta.
 *  - delta <= -m: every g_i absorbs one Delta^-1 and becomes a negative word of
 *    length k - |g_i|; the rest stays as Delta^-(|delta|-m).
 *  - -m < delta < 0: the |delta| longest letters absorb the Delta^-1's (leftmost
 *    first among ties), the others are conjugated by the Delta's passing them.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/normal_form.hpp"

namespace artinwalk {

struct MinimalWord {
    std::int64_t length = 0;
    std::vector<ArtinLetter> word;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("word length overflow");
    return out;
}

inline std::int64_t tail_splus(std::span<const TGen> tail)
{
    std::int64_t s = 0;
    for (const TGen& t : tail) s += t.len;
    return s;
}

/// Positions receiving a Delta^-1 in the middle regime: |delta| longest, leftmost among ties.
inline std::vector<bool> absorbing_positions(std::span<const TGen> tail, std::size_t count)
{
    std::vector<std::size_t> order(tail.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return tail[i].len > tail[j].len; });
    std::vector<bool> chosen(tail.size(), false);
    for (std::size_t i = 0; i < count; ++i) chosen[order[i]] = true;
    return chosen;
}

inline void emit_positive(TGen t, std::vector<ArtinLetter>& out)
{
    Letter x = t.start;
    for (int i = 0; i < t.len; ++i, x = swap(x)) out.push_back(x == Letter::a ? ArtinLetter::a : ArtinLetter::b);
}

/// The word of t^-1: the letters of t reversed and inverted.
inline void emit_negative(TGen t, std::vector<ArtinLetter>& out)
{
    Letter x = t.last();
    for (int i = 0; i < t.len; ++i, x = swap(x))
        out.push_back(x == Letter::a ? ArtinLetter::a_inv : ArtinLetter::b_inv);
}

inline TGen delta_letter(ArtinIndex k) { return {Letter::a, k.value()}; }

} // namespace detail

/// |g|_S without building a witness word.
inline std::int64_t artin_length(ArtinIndex k, const ArtinElement& g)
{
    const auto m = static_cast<std::int64_t>(g.tail.size());
    const std::int64_t kk = k.value();
    const std::int64_t d = g.delta_exp;
    if (d >= 0) return detail::checked_add(detail::tail_splus(g.tail), detail::checked_mul(d, kk));
    if (-d >= m) {
        const std::int64_t body = m * kk - detail::tail_splus(g.tail);
        return detail::checked_add(body, detail::checked_mul(-d - m, kk));
    }
    const auto chosen = detail::absorbing_positions(g.tail, static_cast<std::size_t>(-d));
    std::int64_t total = 0;
    for (std::size_t i = 0; i < g.tail.size(); ++i) total += chosen[i] ? kk - g.tail[i].len : g.tail[i].len;
    return total;
}

/**
 * |g|_S together with one minimal word. The Delta^n blocks are spelled out,
 * so this is meant for elements of moderate size.
 */
inline MinimalWord length_and_minimal_word(ArtinIndex k, const ArtinElement& g)
{
    validate(k, g);
    MinimalWord out;
    out.length = artin_length(k, g);
    const auto m = static_cast<std::int64_t>(g.tail.size());
    const std::int64_t d = g.delta_exp;
    const TGen delta = detail::delta_letter(k);

    if (d >= 0) {
        for (const TGen& t : g.tail) detail::emit_positive(t, out.word);
        for (std::int64_t i = 0; i < d; ++i) detail::emit_positive(delta, out.word);
        return out;
    }

    std::vector<bool> chosen(g.tail.size(), true);
    if (-d < m) chosen = detail::absorbing_positions(g.tail, static_cast<std::size_t>(-d));

    // A Delta^-1 placed right after position l conjugates every letter to its right.
    std::size_t passed = 0;
    for (std::size_t j = 0; j < g.tail.size(); ++j) {
        const TGen t = (passed % 2 != 0) ? bar(k, g.tail[j]) : g.tail[j];
        if (chosen[j]) {
            // t.Delta^-1 = (t*)^-1
            detail::emit_negative(star(k, t), out.word);
            ++passed;
        } else {
            detail::emit_positive(t, out.word);
        }
    }
    for (std::int64_t i = m; i < -d; ++i) detail::emit_negative(delta, out.word);
    return out;
}

} // namespace artinwalk
