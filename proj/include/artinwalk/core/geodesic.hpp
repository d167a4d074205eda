#pragma once

/**
 * @file geodesic.hpp
 * @brief All geodesics of A_k/Z over Sigma, the local left action on them,
 *        and the transducer psi sending a geodesic to the Garside geodesic.
 */

#include <algorithm>
#include <cstddef>
#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/normal_form.hpp"

namespace artinwalk {

class NotGeodesicError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * A geodesic word over Sigma: consecutive letters satisfy Last = next First.
 * The element Delta is not of that form and is kept as the special value
 * (no letters, `is_delta` set); it is displayed as a.ba.
 */
struct GeodesicWord {
    std::vector<SigmaGen> letters;
    bool is_delta = false;

    std::size_t size() const noexcept { return is_delta ? 2u : letters.size(); }
    friend bool operator==(const GeodesicWord&, const GeodesicWord&) = default;
};

inline void validate(ArtinIndex k, const GeodesicWord& v)
{
    for (const SigmaGen& u : v.letters) check_sigma(k, u);
    if (v.is_delta && (!v.letters.empty() || k.even())) throw NotGeodesicError("malformed special word Delta");
    if (!is_geodesic(k, v.letters)) throw NotGeodesicError("word violates Last(u_i) = First(u_i+1)");
}

/// The display representative a.ba of Delta, or the letters themselves.
inline std::vector<SigmaGen> display_letters(const GeodesicWord& v)
{
    if (v.is_delta) return {{{Letter::a, 1}, false}, {{Letter::b, 2}, false}};
    return v.letters;
}

namespace detail {

/// In-place u (.) v on a front-accessible container (vector-backed words use a deque copy).
template <class Container>
void geo_step_inplace(ArtinIndex k, SigmaBar u, Container& v, bool& is_delta)
{
    if (u.is_one()) return;
    if (u.is_delta()) {
        if (is_delta) {
            is_delta = false;
        } else if (v.empty()) {
            is_delta = k.odd();
        } else {
            v.front() = twist(k, v.front());
        }
        return;
    }
    if (is_delta) {
        is_delta = false;
        v.push_front(toggle_delta(k, u.gen));
        return;
    }
    if (v.empty()) {
        v.push_front(u.gen);
        return;
    }
    const SmallProduct c = mult_sigma(k, u, SigmaBar::of(v.front()));
    switch (c.kind) {
    case SmallProduct::Kind::one:
        v.pop_front();
        break;
    case SmallProduct::Kind::delta:
        v.pop_front();
        if (v.empty())
            is_delta = true;
        else
            v.front() = twist(k, v.front());
        break;
    case SmallProduct::Kind::sigma:
        v.front() = c.gen;
        break;
    case SmallProduct::Kind::big:
        v.push_front(u.gen);
        break;
    }
}

} // namespace detail

/// u (.) v: the left action of a Sigma-bar letter on a geodesic, touching at most two letters.
inline GeodesicWord geo_step(ArtinIndex k, SigmaBar u, const GeodesicWord& v)
{
    std::deque<SigmaGen> buf(v.letters.begin(), v.letters.end());
    bool is_delta = v.is_delta;
    detail::geo_step_inplace(k, u, buf, is_delta);
    return {{buf.begin(), buf.end()}, is_delta};
}

inline GeodesicWord geo_step(ArtinIndex k, SigmaGen u, const GeodesicWord& v)
{
    return geo_step(k, SigmaBar::of(u), v);
}

/**
 * psi: a geodesic to the Garside geodesic of the same element. Sweeps left to
 * right with the parity p of Delta-flags seen so far; letter i becomes
 * iota^p(t_i) and the total parity becomes the trailing flag.
 */
inline GarsideQuotientWord psi(ArtinIndex k, const GeodesicWord& v)
{
    validate(k, v);
    if (v.is_delta) return {{}, true};
    GarsideQuotientWord out;
    bool parity = false;
    for (const SigmaGen& u : v.letters) {
        out.letters.push_back(parity ? bar(k, u.t) : u.t);
        parity = parity != u.delta;
    }
    out.delta_flag = parity;
    return out;
}

namespace detail {

inline void psi_inverse_rec(ArtinIndex k, std::span<const TGen> rest, bool need_flag, bool parity,
                            std::vector<SigmaGen>& prefix, std::vector<GeodesicWord>& out)
{
    // rest holds the remaining Garside letters; `parity` is the Delta count emitted so far.
    const TGen t = parity ? bar(k, rest.front()) : rest.front();
    if (rest.size() == 1) {
        prefix.push_back({t, k.odd() && (parity != need_flag)});
        out.push_back({prefix, false});
        prefix.pop_back();
        return;
    }
    prefix.push_back({t, false});
    psi_inverse_rec(k, rest.subspan(1), need_flag, parity, prefix, out);
    prefix.pop_back();
    if (k.odd()) {
        prefix.push_back({t, true});
        psi_inverse_rec(k, rest.subspan(1), need_flag, !parity, prefix, out);
        prefix.pop_back();
    }
}

} // namespace detail

/**
 * psi^-1(u): every geodesic mapped to u. Follows the recursion
 * psi^-1(u_1...u_m) = u_1.psi^-1(u_2...u_m) u u_1 Delta.psi^-1(iota(u_2)...iota(u_m) Delta).
 * For k odd and m >= 2 letters the result has 2^(m-1) elements.
 */
inline std::vector<GeodesicWord> psi_inverse(ArtinIndex k, const GarsideQuotientWord& u)
{
    validate(k, u);
    if (u.is_identity()) return {GeodesicWord{}};
    if (u.is_delta()) return {GeodesicWord{{}, true}};
    std::vector<GeodesicWord> out;
    std::vector<SigmaGen> prefix;
    detail::psi_inverse_rec(k, u.letters, u.delta_flag, false, prefix, out);
    return out;
}

/// Prefix distance d(u, v) = max(|u|, |v|) - |u ^ v|, with Delta read as a.ba.
inline std::size_t prefix_distance(const GeodesicWord& u, const GeodesicWord& v)
{
    const auto x = display_letters(u);
    const auto y = display_letters(v);
    const auto mm = std::mismatch(x.begin(), x.end(), y.begin(), y.end());
    const auto common = static_cast<std::size_t>(mm.first - x.begin());
    return std::max(x.size(), y.size()) - common;
}

} // namespace artinwalk
