#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "artinwalk/core/length.hpp"
#include "artinwalk/core/normal_form.hpp"
#include "artinwalk/core/text.hpp"
#include "artinwalk/drift/drift.hpp"
#include "artinwalk/harmonic/cylinders.hpp"
#include "artinwalk/harmonic/traffic.hpp"
#include "artinwalk/montecarlo/estimate.hpp"
#include "artinwalk/montecarlo/oracle.hpp"
#include "artinwalk/montecarlo/rng.hpp"
#include "artinwalk/montecarlo/walk.hpp"
#include "artinwalk/validation/random_measures.hpp"

using namespace artinwalk;

namespace {

constexpr TGen A{Letter::a, 1};
constexpr TGen B{Letter::b, 1};
constexpr TGen AB{Letter::a, 2};
constexpr TGen BA{Letter::b, 2};

StepMeasureFull point_mass(ArtinIndex k, TGen t) { return StepMeasureFull(k, {{t, 0, 1.0}}); }

StepMeasureFull positive_walk(ArtinIndex k) { return StepMeasureFull(k, {{A, 0, 0.5}, {B, 0, 0.5}}); }

std::vector<SigmaBar> random_sequence(const StepMeasureQuotient& mu, std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    return sample_quotient_steps(mu, n, rng);
}

} // namespace

TEST(Rng, DeterministicAndDistinctReplicas)
{
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
    std::set<std::uint64_t> seeds;
    for (std::uint64_t r = 0; r < 1000; ++r) seeds.insert(replica_seed(42, r));
    EXPECT_EQ(seeds.size(), 1000u);
    EXPECT_NE(replica_seed(1, 0), replica_seed(2, 0));
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(DiscreteSampler, FrequenciesMatchWeights)
{
    const std::vector<double> w{0.1, 0.0, 0.6, 0.3};
    const DiscreteSampler s(w);
    Rng rng(3);
    std::vector<int> counts(w.size(), 0);
    const int n = 200'000;
    for (int i = 0; i < n; ++i) ++counts[s(rng)];
    EXPECT_EQ(counts[1], 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double f = static_cast<double>(counts[i]) / n;
        EXPECT_NEAR(f, w[i], 5 * std::sqrt(w[i] * (1 - w[i]) / n) + 1e-12) << i;
    }
}

TEST(ReplicaStats, MeanAndStandardError)
{
    const ReplicaStats s = replica_stats({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_THROW(replica_stats({1.0}), std::invalid_argument);
}

TEST(RunWalk, PointMassIsDeterministic)
{
    for (int kv : {3, 4, 7}) {
        const ArtinIndex k(kv);
        const WalkTrajectoryStats s = run_walk(point_mass(k, A), 1000, 1);
        EXPECT_EQ(s.word_length, 1000);
        EXPECT_EQ(s.delta_exp, 0);
        EXPECT_EQ(s.splus, 1000);
        EXPECT_EQ(s.final_element.tail.size(), 1000u);
        EXPECT_EQ(s.word_length_quarter, 250);
        // |tail| >= 500 over the last 500 steps.
        EXPECT_EQ(s.stable_prefix.size(), 499u);
    }
}

TEST(RunWalk, PositiveWalkIsGeodesic)
{
    for (int kv : {3, 4, 5}) {
        const WalkTrajectoryStats s = run_walk(positive_walk(ArtinIndex(kv)), 4096, 9);
        for (const auto& [m, len] : s.checkpoints) EXPECT_EQ(len, static_cast<std::int64_t>(m)) << kv;
    }
}

TEST(RunWalk, StatisticsAreConsistent)
{
    const ArtinIndex k(5);
    const StepMeasureFull nu = artin_weights(k, 0.3, 0.3, 0.2, 0.2);
    const WalkTrajectoryStats s = run_walk(nu, 3000, 17);
    const ArtinElement& X = s.final_element;
    EXPECT_EQ(s.word_length, artin_length(k, X));
    EXPECT_EQ(s.delta_exp, X.delta_exp);
    std::int64_t splus = 0, count = 0;
    for (const TGen& t : X.tail) splus += t.len;
    for (std::int64_t c : s.letter_counts) count += c;
    EXPECT_EQ(s.splus, splus);
    EXPECT_EQ(count, static_cast<std::int64_t>(X.tail.size()));
    EXPECT_EQ(s.sigma_length, static_cast<std::int64_t>(project(k, X).sigma_length()));
    ASSERT_LE(s.stable_prefix.size(), X.tail.size());
    EXPECT_TRUE(std::equal(s.stable_prefix.begin(), s.stable_prefix.end(), X.tail.begin()));
    std::uint64_t prev = 0;
    for (const auto& [m, len] : s.checkpoints) {
        EXPECT_GT(m, prev);
        EXPECT_LE(len, static_cast<std::int64_t>(m));
        prev = m;
    }
    EXPECT_EQ(prev, 3000u);
    EXPECT_THROW(run_walk(nu, 0, 1), std::invalid_argument);
}

TEST(RunWalk, ShortWalksAgreeWithBreadthFirstOracle)
{
    const ArtinIndex k(4);
    const LengthTable dist = bfs_oracle(k, 7);
    const StepMeasureFull nu = uniform_artin(k);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const WalkTrajectoryStats s = run_walk(nu, 7, seed);
        const auto it = dist.find(s.final_element);
        ASSERT_NE(it, dist.end());
        EXPECT_EQ(s.word_length, static_cast<std::int64_t>(it->second));
    }
}

TEST(BackwardWalk, Example)
{
    const ArtinIndex k(3);
    // Steps a, ab^, a, ab^ read from the right.
    const std::vector<SigmaBar> seq{SigmaBar::of({A, false}), SigmaBar::of({AB, true}), SigmaBar::of({A, false}),
                                    SigmaBar::of({AB, true})};
    const GeodesicWord z = backward_fold(k, seq);
    EXPECT_EQ(psi(k, z), forward_fold(k, seq));
}

TEST(BackwardWalk, PsiOfBackwardEqualsForward)
{
    Rng rng(21);
    for (int kv : {3, 4, 5}) {
        const ArtinIndex k(kv);
        for (int trial = 0; trial < 300; ++trial) {
            const StepMeasureQuotient mu = random_quotient_measure(k, rng);
            const auto seq = random_sequence(mu, 1 + trial % 40, static_cast<std::uint64_t>(trial));
            const GeodesicWord z = backward_fold(k, seq);
            const GarsideQuotientWord y = forward_fold(k, seq);
            EXPECT_EQ(psi(k, z), y) << kv << " " << trial;
            EXPECT_EQ(z.is_delta ? 2u : z.letters.size(), y.sigma_length());
        }
    }
}

TEST(BackwardWalk, ConsecutiveFoldsDifferInAtMostTwoLetters)
{
    const ArtinIndex k(3);
    const StepMeasureQuotient mu = project(uniform_artin(k));
    const auto seq = random_sequence(mu, 400, 5);
    GeodesicWord prev = backward_fold(k, std::span(seq).first(1));
    for (std::size_t n = 2; n <= seq.size(); ++n) {
        const GeodesicWord z = backward_fold(k, std::span(seq).first(n));
        if (prev.is_delta || z.is_delta) {
            prev = z;
            continue;
        }
        EXPECT_LE(prefix_distance(prev, z), 2u) << n;
        prev = z;
    }
}

TEST(BackwardWalk, Reproducible)
{
    const StepMeasureQuotient mu = project(uniform_artin(ArtinIndex(4)));
    EXPECT_EQ(backward_walk(mu, 500, 8), backward_walk(mu, 500, 8));
    EXPECT_THROW(backward_walk(mu, 0, 8), std::invalid_argument);
}

TEST(ThetaDelta, Examples)
{
    const ArtinIndex k(3);
    EXPECT_EQ(theta_delta(k, FullGen{A, 0}, BA), 1);
    EXPECT_EQ(theta_delta(k, FullGen{A, 0}, B), 0);
    EXPECT_EQ(theta_delta(k, FullGen{A, 0}, A), 0);
    EXPECT_EQ(theta_delta(k, FullGen{AB, 0}, A), 1);
    EXPECT_EQ(theta_delta(k, FullGen{A, -2}, A), -2);
    EXPECT_EQ(theta_delta(k, FullGen{std::nullopt, 3}, A), 3);
    // a^-1 = ba.Delta^-1 = Delta^-1.ab; ab.a = Delta, while ab ends in b and cannot merge with b.
    EXPECT_EQ(theta_delta(k, FullGen{BA, -1}, A), 0);
    EXPECT_EQ(theta_delta(k, FullGen{BA, -1}, B), -1);
}

TEST(LeftWalk, AgreesWithCanonicalForm)
{
    Rng rng(33);
    for (int kv : {3, 4, 5, 6}) {
        const ArtinIndex k(kv);
        for (int trial = 0; trial < 100; ++trial) {
            const StepMeasureFull nu = random_full_measure(k, rng);
            const StepSampler sample(nu);
            LeftWalk w(k);
            std::vector<FullGen> word;
            for (int m = 0; m < 60; ++m) {
                const FullGen x = sample(rng);
                const std::int64_t before = w.delta_exp();
                const std::int64_t theta = w.left_multiply(x);
                EXPECT_EQ(w.delta_exp() - before, theta);
                word.insert(word.begin(), x);
            }
            EXPECT_EQ(w.element(), canonicalize(k, word)) << kv << " " << trial;
        }
    }
}

TEST(LeftWalk, ThetaMatchesStandaloneFunction)
{
    const ArtinIndex k(5);
    Rng rng(4);
    const StepMeasureFull nu = random_full_measure(k, rng);
    const StepSampler sample(nu);
    LeftWalk w(k);
    for (int m = 0; m < 2000; ++m) {
        const FullGen x = sample(rng);
        const ArtinElement g = w.element();
        const std::int64_t theta = w.left_multiply(x);
        if (!g.tail.empty()) {
            EXPECT_EQ(theta, theta_delta(k, x, g.tail.front()));
        }
    }
}

TEST(Estimate, ReproducibleOutput)
{
    const StepMeasureFull nu = artin_weights(ArtinIndex(4), 0.15, 0.35, 0.3, 0.2);
    const EstimateReport a = estimate_drifts(nu, 2000, 5, 99);
    const EstimateReport b = estimate_drifts(nu, 2000, 5, 99);
    const EstimateReport c = estimate_drifts(nu, 2000, 5, 100);
    EXPECT_EQ(to_csv(a), to_csv(b));
    EXPECT_EQ(to_kv(a), to_kv(b));
    EXPECT_NE(to_csv(a), to_csv(c));
    EXPECT_EQ(a.gamma.size(), 5u);
    EXPECT_EQ(to_csv(a).rfind("row,gamma,gamma_sigma,gamma_splus,gamma_delta,se_gamma", 0), 0u);
    EXPECT_NE(to_kv(a).find("seed = 99"), std::string::npos);
    EXPECT_THROW(estimate_drifts(nu, 2000, 1, 99), std::invalid_argument);
}

// gamma_sigma, gamma_splus and gamma_delta are additive functionals with no kink, so
// plain replica means are unbiased up to O(1/n).
TEST(Estimate, LinearDriftsWithinStandardErrors)
{
    Rng rng(8);
    for (int kv : {3, 4, 5}) {
        const ArtinIndex k(kv);
        const StepMeasureFull nu = random_full_measure(k, rng);
        const DriftReport d = compute_drifts(nu).report;
        const EstimateReport e = estimate_drifts(nu, 20'000, 30, 1000 + static_cast<std::uint64_t>(kv));
        auto z = [](const ReplicaStats& s, double v) { return std::abs(s.mean - v) / s.se; };
        EXPECT_LT(z(e.est_gamma_sigma, d.gamma_sigma), 4.0) << kv;
        EXPECT_LT(z(e.est_gamma_splus, d.gamma_splus), 4.0) << kv;
        EXPECT_LT(z(e.est_gamma_delta, d.gamma_delta), 4.0) << kv;
        EXPECT_LT(z(e.est_gamma_debiased, d.gamma), 4.0) << kv;
    }
}

// On a kink of the length formula E|X_n| - n.gamma grows like sqrt(n); the plain
// estimate is biased upward while the two-scale estimate is not.
TEST(Estimate, SimpleWalkKinkBias)
{
    const ArtinIndex k(3);
    const DriftReport exact = compute_drifts(uniform_artin(k)).report;
    double plain = 0.0, debiased = 0.0;
    const int seeds = 6;
    for (int s = 0; s < seeds; ++s) {
        const EstimateReport e = estimate_drifts(uniform_artin(k), 20'000, 40, 500 + static_cast<std::uint64_t>(s));
        plain += (e.est_gamma.mean - exact.gamma) / e.est_gamma.se;
        debiased += (e.est_gamma_debiased.mean - exact.gamma) / e.est_gamma_debiased.se;
    }
    plain /= seeds;
    debiased /= seeds;
    EXPECT_GT(plain, 0.5);
    EXPECT_LT(std::abs(debiased), 1.5);
}

TEST(Estimate, ThetaMeanMatchesGammaDelta)
{
    Rng rng(12);
    for (int kv : {3, 4, 6}) {
        const ArtinIndex k(kv);
        const StepMeasureFull nu = random_full_measure(k, rng);
        const DriftReport d = compute_drifts(nu).report;
        const ReplicaStats t = estimate_theta_delta(nu, 20'000, 20, 77);
        EXPECT_LT(std::abs(t.mean - d.gamma_delta), 4.0 * t.se + 1e-12) << kv;
    }
}

TEST(EmpiricalHarmonic, DepthOneMatchesR)
{
    const ArtinIndex k(3);
    const StepMeasureQuotient mu = project(artin_weights(k, 0.4, 0.3, 0.2, 0.1));
    const HarmonicSolution sol = solve_traffic(mu);
    const EmpiricalHarmonic e = empirical_harmonic(mu, 1, 400, 4000, 31);
    EXPECT_EQ(e.used_y + e.excluded_y, 4000u);
    EXPECT_GT(e.used_y, 3900u);
    double total = 0.0;
    for (const auto& [u, c] : e.mu) {
        total += c.freq;
        const double exact = mu_cylinder(sol, u);
        EXPECT_LT(std::abs(c.freq - exact), 4.0 * std::sqrt(exact * (1 - exact) / e.used_y)) << text::format(u[0]);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (std::size_t ti = 0; ti < sol.alphabet.t_size(); ++ti) {
        const TGen t = sol.alphabet.t_at(ti);
        EXPECT_NEAR(mu_cylinder(sol, std::vector<TGen>{t}), sol.R_of(t), 1e-12);
    }
}

TEST(EmpiricalHarmonic, DepthTwoMatchesBothMeasures)
{
    const ArtinIndex k(4);
    const StepMeasureQuotient mu = project(artin_weights(k, 0.15, 0.35, 0.3, 0.2));
    const HarmonicSolution sol = solve_traffic(mu);
    const EmpiricalHarmonic e = empirical_harmonic(mu, 2, 400, 4000, 32);
    ASSERT_GT(e.used_z, 3500u);
    for (const auto& [c, f] : e.kappa) {
        const double exact = kappa_cylinder(sol, GeodesicWord{c, false});
        EXPECT_LT(std::abs(f.freq - exact), 4.0 * std::sqrt(exact * (1 - exact) / e.used_z) + 1e-12);
    }
    for (const auto& [u, f] : e.mu) {
        const double exact = mu_cylinder(sol, u);
        EXPECT_LT(std::abs(f.freq - exact), 4.0 * std::sqrt(exact * (1 - exact) / e.used_y) + 1e-12);
    }
    EXPECT_THROW(empirical_harmonic(mu, 5, 10, 10, 1), std::invalid_argument);
    EXPECT_THROW(empirical_harmonic(mu, 0, 10, 10, 1), std::invalid_argument);
}
