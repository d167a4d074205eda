#pragma once

/**
 * @file walk.hpp
 * @brief Sampled trajectories: the forward walk in A_k, the backward (nested) fold
 *        over geodesics of A_k/Z, and the left walk that exposes theta_Delta.
 */

#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/geodesic.hpp"
#include "artinwalk/core/length.hpp"
#include "artinwalk/core/normal_form.hpp"
#include "artinwalk/harmonic/measure.hpp"
#include "artinwalk/montecarlo/rng.hpp"

namespace artinwalk {

/// Draws i.i.d. steps t.Delta^n from nu.
class StepSampler {
public:
    explicit StepSampler(const StepMeasureFull& nu) : k_(nu.k()), sampler_(weights(nu))
    {
        for (const FullAtom& x : nu.atoms()) steps_.push_back(FullGen{x.t, x.delta_exp});
    }

    ArtinIndex k() const noexcept { return k_; }
    const FullGen& operator()(Rng& rng) const { return steps_[sampler_(rng)]; }

private:
    static std::vector<double> weights(const StepMeasureFull& nu)
    {
        std::vector<double> w;
        for (const FullAtom& x : nu.atoms()) w.push_back(x.prob);
        return w;
    }

    ArtinIndex k_;
    DiscreteSampler sampler_;
    std::vector<FullGen> steps_;
};

/// Draws i.i.d. Sigma-bar letters from mu.
class QuotientSampler {
public:
    explicit QuotientSampler(const StepMeasureQuotient& mu) : supp_(mu.support()), sampler_(weights(mu, supp_)) {}

    SigmaBar operator()(Rng& rng) const { return supp_[sampler_(rng)]; }

private:
    static std::vector<double> weights(const StepMeasureQuotient& mu, const std::vector<SigmaBar>& supp)
    {
        std::vector<double> w;
        for (const SigmaBar& x : supp) w.push_back(mu(x));
        return w;
    }

    std::vector<SigmaBar> supp_;
    DiscreteSampler sampler_;
};

struct WalkTrajectoryStats {
    std::uint64_t n = 0;
    std::int64_t word_length = 0;  ///< |X_n|_S
    std::int64_t word_length_quarter = 0; ///< |X_m|_S at m = floor(n/4)
    std::int64_t sigma_length = 0; ///< |Y_n|_Sigma in the quotient
    std::int64_t delta_exp = 0;    ///< delta_n
    std::int64_t splus = 0;        ///< sum of tail letter lengths
    std::vector<std::int64_t> letter_counts; ///< [j-1] = number of tail letters of length j
    std::vector<std::pair<std::uint64_t, std::int64_t>> checkpoints; ///< (m, |X_m|_S) at powers of 2 and n
    std::vector<TGen> stable_prefix; ///< tail prefix of Y untouched during the last ceil(n/2) steps
    ArtinElement final_element;
};

/**
 * X_0 = 1, X_{m+1} = X_m * x_m. Each step touches only the last tail letter,
 * so the tail prefix shorter than min |tail| - 1 over the second half of the
 * run is fixed.
 */
inline WalkTrajectoryStats run_walk(const StepMeasureFull& nu, std::uint64_t n_steps, std::uint64_t seed)
{
    if (n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");
    const ArtinIndex k = nu.k();
    const StepSampler sample(nu);
    Rng rng(seed);
    WalkTrajectoryStats s;
    ArtinElement& X = s.final_element;
    const std::uint64_t half_start = n_steps - (n_steps + 1) / 2;
    std::size_t min_len = SIZE_MAX;
    for (std::uint64_t m = 1; m <= n_steps; ++m) {
        multiply_right(k, X, sample(rng));
        if (m >= half_start) min_len = std::min(min_len, X.tail.size());
        if (std::has_single_bit(m) || m == n_steps) s.checkpoints.emplace_back(m, artin_length(k, X));
        if (m == n_steps / 4) s.word_length_quarter = artin_length(k, X);
    }
    s.n = n_steps;
    s.word_length = s.checkpoints.back().second;
    s.sigma_length = static_cast<std::int64_t>(project(k, X).sigma_length());
    s.delta_exp = X.delta_exp;
    s.letter_counts.assign(static_cast<std::size_t>(k.value() - 1), 0);
    for (const TGen& t : X.tail) {
        s.splus += t.len;
        ++s.letter_counts[static_cast<std::size_t>(t.len - 1)];
    }
    const std::size_t stable = min_len == 0 ? 0 : min_len - 1;
    s.stable_prefix.assign(X.tail.begin(), X.tail.begin() + static_cast<std::ptrdiff_t>(stable));
    return s;
}

/// Forward normal form Y_n = y_0 * ... * y_{n-1} in A_k/Z.
inline GarsideQuotientWord forward_fold(ArtinIndex k, std::span<const SigmaBar> seq)
{
    GarsideQuotientWord y;
    for (const SigmaBar& x : seq) y = nf_mult_gen(k, std::move(y), x);
    return y;
}

/// Z_n = y_0 (.) [y_1 (.) [ ... (.) y_{n-1}]].
inline GeodesicWord backward_fold(ArtinIndex k, std::span<const SigmaBar> seq)
{
    std::deque<SigmaGen> w;
    bool is_delta = false;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) detail::geo_step_inplace(k, *it, w, is_delta);
    return {{w.begin(), w.end()}, is_delta};
}

inline std::vector<SigmaBar> sample_quotient_steps(const StepMeasureQuotient& mu, std::uint64_t n_steps, Rng& rng)
{
    const QuotientSampler sample(mu);
    std::vector<SigmaBar> seq;
    seq.reserve(n_steps);
    for (std::uint64_t i = 0; i < n_steps; ++i) seq.push_back(sample(rng));
    return seq;
}

inline GeodesicWord backward_walk(const StepMeasureQuotient& mu, std::uint64_t n_steps, std::uint64_t seed)
{
    if (n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");
    Rng rng(seed);
    const auto seq = sample_quotient_steps(mu, n_steps, rng);
    return backward_fold(mu.k(), seq);
}

/**
 * Delta-exponent produced by left-multiplying a boundary word with head xi_head
 * by the step t.Delta^n. The step equals Delta^n.v with v = bar^n(t); v merges
 * with the head into an alternating word that contains Delta iff
 * Last(v) != First(xi_head) and |v| + |xi_head| >= k.
 */
inline std::int64_t theta_delta(ArtinIndex k, const FullGen& step, TGen xi_head)
{
    if (!step.t) return step.delta_exp;
    const TGen v = bar_pow(k, *step.t, step.delta_exp);
    const bool absorbs = v.last() != xi_head.first() && v.len + xi_head.len >= k.value();
    return step.delta_exp + (absorbs ? 1 : 0);
}

/**
 * The left walk X'_{m+1} = x_m . X'_m kept in normal form tail.Delta^delta. The
 * tail is stored untwisted with a pending parity: the actual letter is
 * bar^parity(stored). left_multiply returns theta_Delta of the step against the
 * current head, which is also the increase of delta.
 */
class LeftWalk {
public:
    explicit LeftWalk(ArtinIndex k) : k_(k) {}

    std::int64_t left_multiply(const FullGen& x)
    {
        const std::int64_t n = x.delta_exp;
        delta_ = detail::checked_add(delta_, n);
        if (k_.odd() && n % 2 != 0) parity_ = !parity_;
        if (!x.t) return n;
        // t.Delta^n.X = t.(Delta^n.X): the head is already twisted, so t meets it directly.
        const TGen v = *x.t;
        if (tail_.empty()) {
            push_front(v);
            return n;
        }
        const TGen g = front();
        if (v.last() == g.first()) {
            push_front(v);
            return n;
        }
        const int s = v.len + g.len;
        if (s < k_.value()) {
            set_front({v.start, s});
            return n;
        }
        // v.g = Delta.w with w the last s - k letters of g; Delta then moves right.
        if (s == k_.value())
            tail_.pop_front();
        else
            set_front({swap_if(v.start, k_.odd()), s - k_.value()});
        if (k_.odd()) parity_ = !parity_;
        delta_ = detail::checked_add(delta_, 1);
        return n + 1;
    }

    std::int64_t delta_exp() const noexcept { return delta_; }

    ArtinElement element() const
    {
        ArtinElement g;
        for (const TGen& t : tail_) g.tail.push_back(parity_ ? bar(k_, t) : t);
        g.delta_exp = delta_;
        return g;
    }

private:
    TGen front() const { return parity_ ? bar(k_, tail_.front()) : tail_.front(); }
    void set_front(TGen t) { tail_.front() = parity_ ? bar(k_, t) : t; }
    void push_front(TGen t) { tail_.push_front(parity_ ? bar(k_, t) : t); }

    ArtinIndex k_;
    std::deque<TGen> tail_;
    std::int64_t delta_ = 0;
    bool parity_ = false;
};

} // namespace artinwalk
