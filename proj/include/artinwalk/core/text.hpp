#pragma once

/**
 * @file text.hpp
 * @brief Text grammar for generators and words.
 *
 * Tokens are separated by '.':
 *   a, b, ab, aba, ...   alternating T-letters
 *   ab^                  the same letter with its Delta-flag set (ab.Delta)
 *   D, D^n               Delta and its powers
 *   a^-1, b^-1           inverse Artin generators
 *   1                    the identity
 * Example: "a.ab.b.D^-4".
 */

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/geodesic.hpp"
#include "artinwalk/core/normal_form.hpp"

namespace artinwalk {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace text {

namespace detail {

inline std::vector<std::string_view> split_dots(std::string_view s)
{
    std::vector<std::string_view> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = s.find('.', pos);
        out.push_back(s.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos));
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    return out;
}

inline std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw ParseError("bad exponent in token '" + std::string(whole) + "'");
    return v;
}

/// An alternating run of a/b characters, or nullopt if `s` is not one.
inline std::optional<TGen> parse_run(std::string_view s)
{
    if (s.empty()) return std::nullopt;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 'a' && s[i] != 'b') return std::nullopt;
        if (i > 0 && s[i] == s[i - 1]) return std::nullopt;
    }
    return TGen{s[0] == 'a' ? Letter::a : Letter::b, static_cast<int>(s.size())};
}

} // namespace detail

/// One token as a generator t.Delta^n of A_k.
inline FullGen parse_full_gen(ArtinIndex k, std::string_view tok)
{
    if (tok == "1") return {};
    if (tok == "D") return {std::nullopt, 1};
    if (tok.starts_with("D^")) return {std::nullopt, detail::parse_int(tok.substr(2), tok)};
    if (tok == "a^-1") return to_full_gen(k, ArtinLetter::a_inv);
    if (tok == "b^-1") return to_full_gen(k, ArtinLetter::b_inv);
    const bool flagged = tok.ends_with('^');
    const auto run = detail::parse_run(flagged ? tok.substr(0, tok.size() - 1) : tok);
    if (!run) throw ParseError("unrecognized generator '" + std::string(tok) + "'");
    if (run->len >= k.value())
        throw ParseError("generator '" + std::string(tok) + "' is not shorter than k = " + std::to_string(k.value()));
    return {*run, flagged ? 1 : 0};
}

/// A product of tokens, reduced to its normal form in A_k.
inline ArtinElement parse_element(ArtinIndex k, std::string_view s)
{
    std::vector<FullGen> word;
    for (std::string_view tok : detail::split_dots(s)) word.push_back(parse_full_gen(k, tok));
    return canonicalize(k, word);
}

/// A single T-letter such as "ab".
inline TGen parse_tgen(ArtinIndex k, std::string_view tok)
{
    const auto run = detail::parse_run(tok);
    if (!run || run->len >= k.value()) throw ParseError("not a T-letter for this k: '" + std::string(tok) + "'");
    return *run;
}

/// A Sigma-bar letter: "ab", "ab^", "1" or "D".
inline SigmaBar parse_sigma_bar(ArtinIndex k, std::string_view tok)
{
    if (tok == "1") return SigmaBar::unit();
    if (tok == "D") {
        if (k.even()) return SigmaBar::unit();
        return SigmaBar::delta_unit();
    }
    const bool flagged = tok.ends_with('^');
    const TGen t = parse_tgen(k, flagged ? tok.substr(0, tok.size() - 1) : tok);
    if (flagged && k.even()) throw ParseError("Delta-flag is not allowed for even k: '" + std::string(tok) + "'");
    return SigmaBar::of({t, flagged});
}

inline SigmaGen parse_sigma(ArtinIndex k, std::string_view tok)
{
    const SigmaBar x = parse_sigma_bar(k, tok);
    if (!x.is_sigma()) throw ParseError("expected a letter of Sigma, got '" + std::string(tok) + "'");
    return x.gen;
}

/// A geodesic over Sigma; the single token "D" is the special word Delta.
inline GeodesicWord parse_geodesic(ArtinIndex k, std::string_view s)
{
    GeodesicWord out;
    if (s == "1" || s.empty()) return out;
    if (s == "D" && k.odd()) return {{}, true};
    for (std::string_view tok : detail::split_dots(s)) out.letters.push_back(parse_sigma(k, tok));
    if (!is_geodesic(k, out.letters)) throw ParseError("not a geodesic: '" + std::string(s) + "'");
    return out;
}

/// A Garside word of A_k/Z: T-letters, the last one optionally flagged.
inline GarsideQuotientWord parse_garside(ArtinIndex k, std::string_view s)
{
    const GeodesicWord v = parse_geodesic(k, s);
    if (v.is_delta) return {{}, true};
    if (!is_garside(k, v.letters)) throw ParseError("not a Garside word: '" + std::string(s) + "'");
    GarsideQuotientWord out;
    for (const SigmaGen& u : v.letters) out.letters.push_back(u.t);
    out.delta_flag = !v.letters.empty() && v.letters.back().delta;
    return out;
}

inline std::string format(TGen t)
{
    std::string s;
    Letter x = t.start;
    for (int i = 0; i < t.len; ++i, x = swap(x)) s.push_back(to_char(x));
    return s;
}

inline std::string format(SigmaGen u) { return format(u.t) + (u.delta ? "^" : ""); }

inline std::string format(SigmaBar u)
{
    if (u.is_one()) return "1";
    if (u.is_delta()) return "D";
    return format(u.gen);
}

inline std::string format(ArtinLetter x)
{
    switch (x) {
    case ArtinLetter::a: return "a";
    case ArtinLetter::b: return "b";
    case ArtinLetter::a_inv: return "a^-1";
    case ArtinLetter::b_inv: return "b^-1";
    }
    return "?";
}

namespace detail {

template <class Range, class Fn>
std::string join(const Range& r, Fn fn)
{
    std::string s;
    for (const auto& x : r) {
        if (!s.empty()) s.push_back('.');
        s += fn(x);
    }
    return s.empty() ? "1" : s;
}

} // namespace detail

inline std::string format(const std::vector<ArtinLetter>& w)
{
    return detail::join(w, [](ArtinLetter x) { return format(x); });
}

inline std::string format(const GeodesicWord& v)
{
    if (v.is_delta) return "D";
    return detail::join(v.letters, [](const SigmaGen& u) { return format(u); });
}

inline std::string format(const GarsideQuotientWord& w)
{
    if (w.is_delta()) return "D";
    std::string s = detail::join(w.letters, [](const TGen& t) { return format(t); });
    if (w.delta_flag) s += "^";
    return s;
}

inline std::string format(const ArtinElement& g)
{
    std::string s;
    for (const TGen& t : g.tail) {
        if (!s.empty()) s.push_back('.');
        s += format(t);
    }
    if (g.delta_exp != 0) {
        if (!s.empty()) s.push_back('.');
        s += g.delta_exp == 1 ? std::string("D") : "D^" + std::to_string(g.delta_exp);
    }
    return s.empty() ? "1" : s;
}

} // namespace text
} // namespace artinwalk
