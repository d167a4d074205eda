#pragma once

/**
 * @file measure.hpp
 * @brief Finitely supported step distributions on A_k (nu) and on A_k/Z (mu).
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/normal_form.hpp"

namespace artinwalk {

class InvalidMeasure : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IrreducibilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One atom t.Delta^n (t empty for a pure power of Delta) with its probability.
struct FullAtom {
    std::optional<TGen> t;
    std::int64_t delta_exp = 0;
    double prob = 0.0;
};

inline constexpr double measure_sum_tolerance = 1e-12;

/// A probability measure nu on p^-1(Sigma-bar) in A_k.
class StepMeasureFull {
public:
    StepMeasureFull(ArtinIndex k, std::vector<FullAtom> atoms) : k_(k)
    {
        double total = 0.0;
        for (const FullAtom& x : atoms) {
            if (x.t) check_tgen(k, *x.t);
            if (!(x.prob >= 0.0) || !std::isfinite(x.prob)) throw InvalidMeasure("probabilities must be finite and >= 0");
            total += x.prob;
            if (x.prob == 0.0) continue;
            bool merged = false;
            for (FullAtom& y : atoms_) {
                if (y.t == x.t && y.delta_exp == x.delta_exp) {
                    y.prob += x.prob;
                    merged = true;
                }
            }
            if (!merged) atoms_.push_back(x);
        }
        if (std::abs(total - 1.0) > measure_sum_tolerance)
            throw InvalidMeasure("probabilities sum to " + std::to_string(total) + ", expected 1");
    }

    ArtinIndex k() const noexcept { return k_; }
    const std::vector<FullAtom>& atoms() const noexcept { return atoms_; }

    /// E[n] for atoms written t.Delta^n.
    double mean_delta_exp() const noexcept
    {
        double s = 0.0;
        for (const FullAtom& x : atoms_) s += static_cast<double>(x.delta_exp) * x.prob;
        return s;
    }

private:
    ArtinIndex k_;
    std::vector<FullAtom> atoms_;
};

/**
 * A probability measure mu on Sigma-bar. Weights are stored in alphabet order
 * for Sigma, followed by the unit and (k odd) Delta.
 */
class StepMeasureQuotient {
public:
    explicit StepMeasureQuotient(ArtinIndex k) : alpha_(k), w_(alpha_.size() + 2, 0.0) {}

    ArtinIndex k() const noexcept { return alpha_.k(); }
    const SigmaAlphabet& alphabet() const noexcept { return alpha_; }

    double operator()(SigmaGen u) const { return w_[alpha_.index(u)]; }
    double operator()(SigmaBar u) const { return w_[slot(u)]; }
    double unit_weight() const noexcept { return w_[alpha_.size()]; }
    double delta_weight() const noexcept { return w_[alpha_.size() + 1]; }

    void add(SigmaBar u, double p)
    {
        if (u.is_sigma()) check_sigma(k(), u.gen);
        w_[slot(u)] += p;
    }

    /// Support as Sigma-bar letters, in a fixed order.
    std::vector<SigmaBar> support() const
    {
        std::vector<SigmaBar> out;
        for (const SigmaBar& u : sigma_bar_alphabet(k()))
            if ((*this)(u) > 0.0) out.push_back(u);
        return out;
    }

    void validate() const
    {
        double total = 0.0;
        for (double p : w_) {
            if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidMeasure("weights must be finite and >= 0");
            total += p;
        }
        if (std::abs(total - 1.0) > measure_sum_tolerance)
            throw InvalidMeasure("weights sum to " + std::to_string(total) + ", expected 1");
    }

private:
    std::size_t slot(SigmaBar u) const
    {
        if (u.is_one()) return alpha_.size();
        if (u.is_delta()) return k().odd() ? alpha_.size() + 1 : alpha_.size();
        return alpha_.index(u.gen);
    }

    SigmaAlphabet alpha_;
    std::vector<double> w_;
};

/// The quotient letter of t.Delta^n.
inline SigmaBar quotient_letter(ArtinIndex k, const std::optional<TGen>& t, std::int64_t n)
{
    const bool flag = k.odd() && (n % 2 != 0);
    if (!t) return flag ? SigmaBar::delta_unit() : SigmaBar::unit();
    return SigmaBar::of({*t, flag});
}

/// mu = nu o p^-1.
inline StepMeasureQuotient project(const StepMeasureFull& nu)
{
    StepMeasureQuotient mu(nu.k());
    for (const FullAtom& x : nu.atoms()) mu.add(quotient_letter(nu.k(), x.t, x.delta_exp), x.prob);
    mu.validate();
    return mu;
}

/// nu on {a, b, a^-1, b^-1} with the given weights; inverses are stored as bar(x*).Delta^-1.
inline StepMeasureFull artin_weights(ArtinIndex k, double pa, double pb, double pa_inv, double pb_inv)
{
    std::vector<FullAtom> atoms;
    const std::pair<ArtinLetter, double> entries[] = {
        {ArtinLetter::a, pa}, {ArtinLetter::b, pb}, {ArtinLetter::a_inv, pa_inv}, {ArtinLetter::b_inv, pb_inv}};
    for (const auto& [x, p] : entries) {
        const FullGen g = to_full_gen(k, x);
        atoms.push_back({g.t, g.delta_exp, p});
    }
    return StepMeasureFull(k, std::move(atoms));
}

/// The simple random walk: 1/4 on each of a, b, a^-1, b^-1.
inline StepMeasureFull uniform_artin(ArtinIndex k) { return artin_weights(k, 0.25, 0.25, 0.25, 0.25); }

/// nu(a) = p, nu(b) = q, nu(a^-1) = 1/2 - q, nu(b^-1) = 1/2 - p.
inline StepMeasureFull pq_measure(ArtinIndex k, double p, double q)
{
    return artin_weights(k, p, q, 0.5 - q, 0.5 - p);
}

/// nu(a) = nu(a^-1) = p, nu(b) = nu(b^-1) = 1/2 - p.
inline StepMeasureFull symmetric_inverse_measure(ArtinIndex k, double p)
{
    return artin_weights(k, p, 0.5 - p, p, 0.5 - p);
}

/// nu(a) = nu(b) = p, nu(a^-1) = nu(b^-1) = 1/2 - p.
inline StepMeasureFull symmetric_letter_measure(ArtinIndex k, double p)
{
    return artin_weights(k, p, p, 0.5 - p, 0.5 - p);
}

/**
 * Checks that supp(mu) generates A_k/Z as a semigroup by breadth-first closure
 * under right multiplication, stopping once a, b, a^-1 and b^-1 are all
 * reached. Throws IrreducibilityError if the closure stalls or exceeds `cap`.
 */
inline void check_irreducible(const StepMeasureQuotient& mu, std::size_t cap = 10'000)
{
    const ArtinIndex k = mu.k();
    const auto supp = mu.support();
    std::vector<GarsideQuotientWord> targets;
    for (Letter x : {Letter::a, Letter::b}) {
        const SigmaGen g{{x, 1}, false};
        targets.push_back(to_quotient_word(k, SigmaBar::of(g)));
        targets.push_back(to_quotient_word(k, SigmaBar::of(sigma_inverse(k, g))));
    }
    std::unordered_set<GarsideQuotientWord, GarsideQuotientWordHash> seen;
    std::vector<GarsideQuotientWord> frontier{GarsideQuotientWord{}};
    seen.insert(GarsideQuotientWord{});
    auto all_found = [&] {
        for (const auto& t : targets)
            if (!seen.contains(t)) return false;
        return true;
    };
    while (!frontier.empty()) {
        std::vector<GarsideQuotientWord> next;
        for (const auto& y : frontier) {
            for (const SigmaBar& x : supp) {
                GarsideQuotientWord z = nf_mult_gen(k, y, x);
                if (seen.insert(z).second) next.push_back(std::move(z));
            }
        }
        if (all_found()) return;
        if (seen.size() > cap) throw IrreducibilityError("support does not generate the group within the closure cap");
        frontier = std::move(next);
    }
    throw IrreducibilityError("support generates a finite subset only; the walk is not irreducible");
}

} // namespace artinwalk
