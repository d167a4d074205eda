#pragma once

/**
 * @file artin.hpp
 * @brief Generators of the dihedral Artin groups A_k = <a, b | prod(a,b;k) = prod(b,a;k)>.
 *
 * The Garside generators T are the alternating words prod(x, y; i) for
 * 1 <= i <= k-1. They are stored as (start letter, length) pairs and never
 * as strings. The quotient A_k/Z uses the alphabet Sigma = T u T^-1, where
 * for k odd every inverse is of the form t.Delta (Delta^2 is central), and
 * for k even Sigma = T because Delta itself is central.
 *
 * Conjugation by Delta is written `bar`: it swaps a and b when k is odd and
 * is the identity when k is even. On Sigma it coincides with the involution
 * `iota` (swap the start letter, keep the length and the Delta-flag).
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace artinwalk {

class InvalidIndex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Letter : std::uint8_t { a = 0, b = 1 };

constexpr Letter swap(Letter x) noexcept { return x == Letter::a ? Letter::b : Letter::a; }
constexpr Letter swap_if(Letter x, bool flip) noexcept { return flip ? swap(x) : x; }
constexpr char to_char(Letter x) noexcept { return x == Letter::a ? 'a' : 'b'; }

namespace detail {

[[noreturn]] inline void throw_invalid_index(int k)
{
    throw InvalidIndex("Artin index k must be >= 3, got " + std::to_string(k));
}

} // namespace detail

/// The index k >= 3 of A_k.
class ArtinIndex {
public:
    constexpr explicit ArtinIndex(int k) : k_(k)
    {
        if (k < 3) detail::throw_invalid_index(k);
    }

    constexpr int value() const noexcept { return k_; }
    constexpr bool odd() const noexcept { return (k_ % 2) != 0; }
    constexpr bool even() const noexcept { return !odd(); }
    /// Number of Delta-flag values carried by a Sigma letter (2 for k odd, 1 for k even).
    constexpr int flag_count() const noexcept { return odd() ? 2 : 1; }
    constexpr std::size_t t_size() const noexcept { return 2 * static_cast<std::size_t>(k_ - 1); }
    constexpr std::size_t sigma_size() const noexcept { return t_size() * static_cast<std::size_t>(flag_count()); }

    friend constexpr bool operator==(ArtinIndex, ArtinIndex) = default;

private:
    int k_;
};

/// A Garside generator prod(start, other; len) with 1 <= len <= k-1.
struct TGen {
    Letter start = Letter::a;
    int len = 1;

    constexpr Letter first() const noexcept { return start; }
    constexpr Letter last() const noexcept { return (len % 2) != 0 ? start : swap(start); }

    friend constexpr auto operator<=>(const TGen&, const TGen&) = default;
};

inline void check_tgen(ArtinIndex k, TGen t)
{
    if (t.len < 1 || t.len > k.value() - 1)
        throw std::invalid_argument("T-letter length " + std::to_string(t.len) + " outside [1, " +
                                    std::to_string(k.value() - 1) + "]");
}

/// Conjugation by Delta restricted to T.
constexpr TGen bar(ArtinIndex k, TGen t) noexcept { return {swap_if(t.start, k.odd()), t.len}; }
constexpr TGen bar_pow(ArtinIndex k, TGen t, std::int64_t n) noexcept
{
    return {swap_if(t.start, k.odd() && (n % 2 != 0)), t.len};
}

/// Left complement: star(g) * g = Delta, |star(g)| = k - |g|, Last(star(g)) != First(g).
constexpr TGen star(ArtinIndex k, TGen g) noexcept
{
    const int len = k.value() - g.len;
    // prod(y; len) ends in y for odd len, in swap(y) for even len; it must end in swap(First(g)).
    const Letter y = (len % 2 != 0) ? swap(g.start) : g.start;
    return {y, len};
}

/// An element of Sigma: t, or t.Delta when `delta` is set (only for k odd).
struct SigmaGen {
    TGen t;
    bool delta = false;

    friend constexpr auto operator<=>(const SigmaGen&, const SigmaGen&) = default;
};

inline void check_sigma(ArtinIndex k, SigmaGen u)
{
    check_tgen(k, u.t);
    if (u.delta && k.even()) throw std::invalid_argument("Delta-flag is not allowed for even k");
}

constexpr Letter first(SigmaGen u) noexcept { return u.t.first(); }

/// Last(t.Delta) is the last symbol of v where Delta.v = t.Delta, i.e. of bar(t).
constexpr Letter last(ArtinIndex k, SigmaGen u) noexcept { return swap_if(u.t.last(), u.delta && k.odd()); }

/// The involution iota: swap the start letter (identity for k even).
constexpr SigmaGen iota(ArtinIndex k, SigmaGen u) noexcept { return {bar(k, u.t), u.delta}; }

/// u.Delta in the quotient; for k even Delta = 1 so this is u itself.
constexpr SigmaGen toggle_delta(ArtinIndex k, SigmaGen u) noexcept
{
    return {u.t, k.odd() ? !u.delta : false};
}

/// The map iota(u).Delta, used whenever a Delta is pushed through a letter.
constexpr SigmaGen twist(ArtinIndex k, SigmaGen u) noexcept { return toggle_delta(k, iota(k, u)); }

/// l(u): the T-part of a Sigma letter.
constexpr TGen ell(SigmaGen u) noexcept { return u.t; }

/// Inverse in A_k/Z: t^-1 = Delta^-1 t* = bar(t*) Delta^-1.
constexpr SigmaGen sigma_inverse(ArtinIndex k, SigmaGen u) noexcept
{
    // (t Delta^e)^-1 = Delta^-e bar(t*) Delta^-1 = bar^{e+1}(t*) Delta^{-1-e}
    const TGen s = star(k, u.t);
    const TGen t = bar_pow(k, s, u.delta ? 2 : 1);
    return {t, k.odd() ? !u.delta : false};
}

/// An element of Sigma-bar = Sigma u {1} (k even) or Sigma u {1, Delta} (k odd).
struct SigmaBar {
    enum class Kind : std::uint8_t { one, delta, sigma };
    Kind kind = Kind::one;
    SigmaGen gen{};

    static constexpr SigmaBar unit() noexcept { return {Kind::one, {}}; }
    static constexpr SigmaBar delta_unit() noexcept { return {Kind::delta, {}}; }
    static constexpr SigmaBar of(SigmaGen g) noexcept { return {Kind::sigma, g}; }

    constexpr bool is_one() const noexcept { return kind == Kind::one; }
    constexpr bool is_delta() const noexcept { return kind == Kind::delta; }
    constexpr bool is_sigma() const noexcept { return kind == Kind::sigma; }

    friend constexpr bool operator==(const SigmaBar& x, const SigmaBar& y) noexcept
    {
        return x.kind == y.kind && (x.kind != Kind::sigma || x.gen == y.gen);
    }
};

/// Classification of a product u*v of two Sigma-bar elements in A_k/Z.
struct SmallProduct {
    enum class Kind : std::uint8_t { one, delta, sigma, big };
    Kind kind = Kind::big;
    SigmaGen gen{};

    constexpr bool is_one() const noexcept { return kind == Kind::one; }
    constexpr bool is_delta() const noexcept { return kind == Kind::delta; }
    constexpr bool is_sigma() const noexcept { return kind == Kind::sigma; }
    constexpr bool is_big() const noexcept { return kind == Kind::big; }

    friend constexpr bool operator==(const SmallProduct& x, const SmallProduct& y) noexcept
    {
        return x.kind == y.kind && (x.kind != Kind::sigma || x.gen == y.gen);
    }
};

namespace detail {

constexpr SmallProduct from_parts(ArtinIndex k, bool has_t, TGen t, std::int64_t delta_pow)
{
    const bool flag = k.odd() && (delta_pow % 2 != 0);
    if (!has_t) return {flag ? SmallProduct::Kind::delta : SmallProduct::Kind::one, {}};
    return {SmallProduct::Kind::sigma, {t, flag}};
}

} // namespace detail

/**
 * Multiply two Sigma-bar elements in A_k/Z and classify the result.
 *
 * Delta-flags are moved right with t.Delta = Delta.bar(t); what remains is a
 * product of two bare T-letters t1.t2. When Last(t1) != First(t2) the word is
 * alternating of length s: a T-letter for s < k, Delta for s = k, and
 * prod(start; s-k).Delta for s > k. Otherwise the product has a two-letter
 * normal form and is `big`.
 */
constexpr SmallProduct mult_sigma(ArtinIndex k, SigmaBar u, SigmaBar v)
{
    const std::int64_t eu = u.is_delta() ? 1 : (u.is_sigma() && u.gen.delta ? 1 : 0);
    const std::int64_t ev = v.is_delta() ? 1 : (v.is_sigma() && v.gen.delta ? 1 : 0);
    const std::int64_t epow = eu + ev;

    if (!u.is_sigma() && !v.is_sigma()) return detail::from_parts(k, false, {}, epow);
    if (!v.is_sigma()) return detail::from_parts(k, true, u.gen.t, epow);
    const TGen t2 = bar_pow(k, v.gen.t, eu);
    if (!u.is_sigma()) return detail::from_parts(k, true, t2, epow);

    const TGen t1 = u.gen.t;
    if (t1.last() == t2.first()) return {SmallProduct::Kind::big, {}};
    const int s = t1.len + t2.len;
    if (s < k.value()) return detail::from_parts(k, true, {t1.start, s}, epow);
    if (s == k.value()) return detail::from_parts(k, false, {}, epow + 1);
    return detail::from_parts(k, true, {t1.start, s - k.value()}, epow + 1);
}

inline SmallProduct mult_sigma(ArtinIndex k, SigmaGen u, SigmaGen v)
{
    return mult_sigma(k, SigmaBar::of(u), SigmaBar::of(v));
}

/**
 * Indexing of Sigma and T in a fixed order: start letter, then length,
 * then Delta-flag. Every table in the harmonic and drift modules uses it.
 */
class SigmaAlphabet {
public:
    explicit SigmaAlphabet(ArtinIndex k) : k_(k)
    {
        gens_.reserve(k.sigma_size());
        for (Letter s : {Letter::a, Letter::b})
            for (int len = 1; len < k.value(); ++len)
                for (int f = 0; f < k.flag_count(); ++f) gens_.push_back({{s, len}, f != 0});
    }

    ArtinIndex k() const noexcept { return k_; }
    std::size_t size() const noexcept { return gens_.size(); }
    std::size_t t_size() const noexcept { return k_.t_size(); }
    const std::vector<SigmaGen>& gens() const noexcept { return gens_; }
    const SigmaGen& operator[](std::size_t i) const { return gens_[i]; }

    std::size_t t_index(TGen t) const noexcept
    {
        return static_cast<std::size_t>(t.start) * static_cast<std::size_t>(k_.value() - 1) +
               static_cast<std::size_t>(t.len - 1);
    }
    TGen t_at(std::size_t i) const noexcept
    {
        const auto km1 = static_cast<std::size_t>(k_.value() - 1);
        return {static_cast<Letter>(i / km1), static_cast<int>(i % km1) + 1};
    }
    std::size_t index(SigmaGen u) const noexcept
    {
        return t_index(u.t) * static_cast<std::size_t>(k_.flag_count()) + (u.delta ? 1u : 0u);
    }

private:
    ArtinIndex k_;
    std::vector<SigmaGen> gens_;
};

/// The set Sigma, in alphabet order. Throws InvalidIndex for k < 3.
inline std::vector<SigmaGen> sigma_alphabet(int k) { return SigmaAlphabet(ArtinIndex(k)).gens(); }

/// Sigma-bar: Sigma followed by 1 and, for k odd, Delta.
inline std::vector<SigmaBar> sigma_bar_alphabet(ArtinIndex k)
{
    const SigmaAlphabet alpha(k);
    std::vector<SigmaBar> out;
    for (const SigmaGen& g : alpha.gens()) out.push_back(SigmaBar::of(g));
    out.push_back(SigmaBar::unit());
    if (k.odd()) out.push_back(SigmaBar::delta_unit());
    return out;
}

/// Next(u) = { v in Sigma : Last(u) = First(v) }.
inline std::vector<SigmaGen> next_set(ArtinIndex k, SigmaGen u)
{
    std::vector<SigmaGen> out;
    const Letter x = last(k, u);
    const SigmaAlphabet alpha(k);
    for (const SigmaGen& v : alpha.gens())
        if (first(v) == x) out.push_back(v);
    return out;
}

} // namespace artinwalk
