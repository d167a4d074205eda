#pragma once

/// Random step measures for property checks. Every measure carries weight on
/// a, b, a^-1 and b^-1 so the walk is irreducible.

#include <cstdint>
#include <vector>

#include "artinwalk/core/normal_form.hpp"
#include "artinwalk/harmonic/measure.hpp"
#include "artinwalk/montecarlo/rng.hpp"

namespace artinwalk {

/// Atoms on the four Artin generators and on each other Sigma-bar letter with
/// probability 1/2, lifted with Delta exponents drawn from -2..2.
inline StepMeasureFull random_full_measure(ArtinIndex k, Rng& rng)
{
    std::vector<FullAtom> atoms;
    for (ArtinLetter x : {ArtinLetter::a, ArtinLetter::b, ArtinLetter::a_inv, ArtinLetter::b_inv}) {
        const FullGen g = to_full_gen(k, x);
        atoms.push_back({g.t, g.delta_exp, 0.05 + rng.uniform()});
    }
    auto lift = [&](bool odd_needed) {
        const auto n = static_cast<std::int64_t>(rng.uniform() * 5.0) - 2;
        if (k.odd() && ((n % 2 != 0) != odd_needed)) return n + 1;
        return n;
    };
    for (const SigmaBar& x : sigma_bar_alphabet(k)) {
        if (rng.uniform() < 0.5) continue;
        if (x.is_one())
            atoms.push_back({std::nullopt, lift(false), 0.05 + rng.uniform()});
        else if (x.is_delta())
            atoms.push_back({std::nullopt, lift(true), 0.05 + rng.uniform()});
        else
            atoms.push_back({x.gen.t, lift(x.gen.delta), 0.05 + rng.uniform()});
    }
    double s = 0.0;
    for (const FullAtom& a : atoms) s += a.prob;
    for (FullAtom& a : atoms) a.prob /= s;
    // Absorb rounding so the sum is 1 to machine precision.
    double t = 0.0;
    for (std::size_t i = 1; i < atoms.size(); ++i) t += atoms[i].prob;
    atoms[0].prob = 1.0 - t;
    return StepMeasureFull(k, std::move(atoms));
}

inline StepMeasureQuotient random_quotient_measure(ArtinIndex k, Rng& rng) { return project(random_full_measure(k, rng)); }

} // namespace artinwalk
