#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "artinwalk/drift/closed_forms.hpp"
#include "artinwalk/drift/drift.hpp"
#include "artinwalk/montecarlo/estimate.hpp"
#include "artinwalk/validation/random_measures.hpp"

using namespace artinwalk;

namespace {

constexpr TGen A{Letter::a, 1};
constexpr TGen B{Letter::b, 1};
constexpr TGen AB{Letter::a, 2};
constexpr TGen BA{Letter::b, 2};

DriftReport drifts(const StepMeasureFull& nu) { return compute_drifts(nu).report; }

// Closed forms for nu(a) = nu(b) = p, written out independently of the library.
struct LetterSymmetric {
    double gs, gsp, gd, g;
};
LetterSymmetric letter_symmetric(double p)
{
    const double s = std::sqrt(16 * p * p - 8 * p + 5);
    const double gs = (-1 + s) / 4;
    const double gsp = (4 * p * p + p + 1 - 3 * p * s) / (2 * (1 - 4 * p));
    const double gd = -(12 * p * p - 5 * p + 1 - p * s) / (2 * (1 - 4 * p));
    const double g = std::max({1 - 4 * p, (1 - 2 * p) * (-1 - 4 * p + s) / (2 * (1 - 4 * p)),
                               p * (-3 + 4 * p + s) / (-1 + 4 * p), -1 + 4 * p});
    return {gs, gsp, gd, g};
}

} // namespace

TEST(GammaSigma, Examples)
{
    EXPECT_NEAR(drifts(uniform_artin(ArtinIndex(3))).gamma_sigma, 0.25, 1e-12);
    EXPECT_NEAR(drifts(symmetric_letter_measure(ArtinIndex(3), 0.1)).gamma_sigma, (-1 + std::sqrt(4.36)) / 4, 1e-10);
}

// The p,q family on B_3 has drifts linear in R(a), R(b), R(ab), R(ba).
TEST(Drifts, SpecialisedB3Forms)
{
    const ArtinIndex k(3);
    Rng rng(1);
    for (int i = 0; i < 40; ++i) {
        const double p = 0.01 + 0.48 * rng.uniform(), q = 0.01 + 0.48 * rng.uniform();
        const DriftResult res = compute_drifts(pq_measure(k, p, q));
        const HarmonicSolution& s = res.solution;
        const DriftReport& d = res.report;
        const double Ra = s.R_of(A), Rb = s.R_of(B), Rab = s.R_of(AB), Rba = s.R_of(BA);
        EXPECT_NEAR(d.gamma_sigma, q * Ra + p * Rb + (0.5 - q) * Rab + (0.5 - p) * Rba, 1e-11);
        EXPECT_NEAR(d.gamma_splus, 0.5 - p - q + 3 * q * Ra + 3 * p * Rb, 1e-11);
        EXPECT_NEAR(d.gamma_delta, p + q - 0.5 - q * Ra - p * Rb, 1e-11);
        if (p + q >= 0.5) {
            const double want = d.gamma_delta >= 0 ? 2 * (p + q) - 1 : 2 * q * Ra + 2 * p * Rb;
            EXPECT_NEAR(d.gamma, want, 1e-11) << "p=" << p << " q=" << q;
        }
    }
}

TEST(GammaSplus, Examples)
{
    EXPECT_NEAR(drifts(uniform_artin(ArtinIndex(3))).gamma_splus, 0.375, 1e-12);
    EXPECT_NEAR(drifts(symmetric_letter_measure(ArtinIndex(3), 0.1)).gamma_splus, letter_symmetric(0.1).gsp, 1e-10);
}

TEST(GammaDelta, Examples)
{
    EXPECT_NEAR(drifts(uniform_artin(ArtinIndex(3))).gamma_delta, -0.125, 1e-12);
    const DriftResult pos = compute_drifts(pq_measure(ArtinIndex(3), 0.5, 0.5));
    EXPECT_NEAR(pos.report.gamma_delta, 0.5 - 0.5 * pos.solution.R_of(A) - 0.5 * pos.solution.R_of(B), 1e-12);
}

// Positive words are geodesic, so the walk on {a, b} has gamma = 1 for every k.
TEST(GammaTotal, PositiveWalkHasUnitDrift)
{
    for (int kv = 3; kv <= 8; ++kv) {
        const DriftReport d = drifts(artin_weights(ArtinIndex(kv), 0.5, 0.5, 0.0, 0.0));
        EXPECT_NEAR(d.gamma, 1.0, 1e-10) << "k=" << kv;
        EXPECT_GT(d.gamma_delta, 0.0);
        EXPECT_EQ(d.branch, "delta_nonneg");
    }
}

// gamma_delta of a positive walk on A_4 is not zero: two steps a.b.a.b already make Delta.
TEST(GammaDelta, PositiveWalkOnA4AgainstSimulation)
{
    const StepMeasureFull nu = artin_weights(ArtinIndex(4), 0.5, 0.5, 0.0, 0.0);
    const DriftReport d = drifts(nu);
    const EstimateReport e = estimate_drifts(nu, 20'000, 30, 5);
    EXPECT_NEAR(e.est_gamma_delta.mean, d.gamma_delta, 3.5 * e.est_gamma_delta.se);
    EXPECT_GT(d.gamma_delta, 0.0);
}

// Random measures with nonzero Delta exponents exercise every term of gamma_delta.
TEST(GammaDelta, RandomLiftedMeasuresAgainstSimulation)
{
    Rng rng(21);
    for (int kv : {3, 4, 5}) {
        const StepMeasureFull nu = random_full_measure(ArtinIndex(kv), rng);
        const DriftReport d = drifts(nu);
        const EstimateReport e = estimate_drifts(nu, 20'000, 30, 100 + static_cast<std::uint64_t>(kv));
        EXPECT_NEAR(e.est_gamma_delta.mean, d.gamma_delta, 3.5 * e.est_gamma_delta.se) << "k=" << kv;
        EXPECT_NEAR(e.est_gamma_sigma.mean, d.gamma_sigma, 3.5 * e.est_gamma_sigma.se) << "k=" << kv;
        EXPECT_NEAR(e.est_gamma_splus.mean, d.gamma_splus, 3.5 * e.est_gamma_splus.se) << "k=" << kv;
    }
}

TEST(Drifts, FormulaAgreementOnRandomMeasures)
{
    Rng rng(2);
    for (int kv : {3, 4, 5, 6}) {
        for (int i = 0; i < 20; ++i) {
            const StepMeasureFull nu = random_full_measure(ArtinIndex(kv), rng);
            const DriftResult res = compute_drifts(nu);
            const StepMeasureQuotient mu = project(nu);
            EXPECT_NEAR(gamma_sigma(mu, res.solution), gamma_sigma_boundary(mu, res.solution), 1e-11);
            EXPECT_NEAR(res.report.gamma_splus, gamma_splus_from_frequencies(res.solution, res.report.gamma_sigma), 1e-11);
            // gamma is a Lipschitz image of the walk: 0 <= gamma <= 1 on a nearest-neighbour walk would need
            // S-steps only; here it is bounded by the largest step length.
            EXPECT_GE(res.report.gamma, -1e-12);
        }
    }
}

// The two gamma_sigma expressions coincide as linear functionals of R, not only at the fixed point.
TEST(Drifts, GammaSigmaFormsAgreeForAnyR)
{
    const StepMeasureQuotient mu = project(artin_weights(ArtinIndex(3), 0.1, 0.2, 0.3, 0.4));
    HarmonicSolution s = solve_traffic(mu);
    s.r[0] += 0.02;
    s.r[3] -= 0.02;
    derive_quantities(s);
    EXPECT_NEAR(gamma_sigma(mu, s), gamma_sigma_boundary(mu, s), 1e-15);
}

TEST(GammaTotal, ThreeEqualsGeneralFormula)
{
    Rng rng(3);
    int regimes[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 4000; ++i) {
        const double gs = 0.05 + rng.uniform();
        const double p2 = rng.uniform();
        const double gsp = gs * (1 + p2);
        const double gd = (rng.uniform() * 2.6 - 2.0) * gs;
        const TotalDrift t = gamma_total(3, gs, gsp, gd, {1 - p2, p2});
        EXPECT_NEAR(t.gamma, gamma_total_k3(gs, gsp, gd, p2), 1e-12);
        ++regimes[t.case_index];
        if (gd < 0 && std::abs(gd) > gs) {
            EXPECT_EQ(t.case_index, 3);
        }
    }
    EXPECT_GT(regimes[0], 0);
    EXPECT_GT(regimes[1], 0);
    EXPECT_GT(regimes[2], 0);
    EXPECT_GT(regimes[3], 0);
}

// gamma_total is continuous in gamma_delta for every k, including at the thresholds.
TEST(GammaTotal, ContinuousAcrossBranches)
{
    Rng rng(4);
    for (int kv = 3; kv <= 8; ++kv) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> p(static_cast<std::size_t>(kv - 1));
            double sum = 0;
            for (double& x : p) sum += (x = rng.uniform());
            double mean_len = 0;
            for (std::size_t i = 0; i < p.size(); ++i) mean_len += static_cast<double>(i + 1) * (p[i] /= sum);
            const double gs = 0.3, gsp = mean_len * gs;
            // Thresholds sum_{j<=l} p(k-j) gs.
            std::vector<double> edges{0.0};
            double part = 0;
            for (int l = 1; l <= kv - 1; ++l) edges.push_back(-(part += p[static_cast<std::size_t>(kv - l - 1)] * gs));
            for (double e : edges) {
                const double h = 1e-9;
                const double lo = gamma_total(kv, gs, gsp, e - h, p).gamma;
                const double at = gamma_total(kv, gs, gsp, e, p).gamma;
                const double hi = gamma_total(kv, gs, gsp, e + h, p).gamma;
                EXPECT_NEAR(lo, at, kv * 2 * h + 1e-14);
                EXPECT_NEAR(hi, at, kv * 2 * h + 1e-14);
            }
        }
    }
}

// The k=3 simple walk sits exactly on the edge |gamma_delta| = p(2) gamma_sigma; both adjacent cases agree.
TEST(GammaTotal, SimpleWalkOnBranchEdge)
{
    const DriftReport d = drifts(uniform_artin(ArtinIndex(3)));
    EXPECT_NEAR(std::abs(d.gamma_delta), d.p_agg[1] * d.gamma_sigma, 1e-12);
    const double case2 = d.gamma_splus - std::abs(d.gamma_delta);
    const double case3 = d.gamma_splus + std::abs(d.gamma_delta) - 2 * d.p_agg[1] * d.gamma_sigma;
    EXPECT_NEAR(case2, case3, 1e-11);
    EXPECT_NEAR(d.gamma, 0.25, 1e-12);
}

TEST(GammaTotal, RejectsWrongFrequencyLength)
{
    EXPECT_THROW(gamma_total(4, 0.3, 0.5, -0.1, {0.5, 0.5}), std::invalid_argument);
}

TEST(ClosedFormInverseSymmetric, Examples)
{
    const DriftReport q = closed_form_b3_inverse_symmetric(0.25);
    EXPECT_NEAR(q.gamma, 0.25, 1e-12);
    EXPECT_NEAR(*smallest_cubic_root_in_unit_interval(0.0, -2.0, 1.0, -0.125), 0.25, 1e-7);
    const DriftReport a = closed_form_b3_inverse_symmetric(0.3), b = closed_form_b3_inverse_symmetric(0.2);
    EXPECT_DOUBLE_EQ(a.gamma, b.gamma);
    EXPECT_NEAR(closed_form_b3_inverse_symmetric(0.01).gamma, drifts(symmetric_inverse_measure(ArtinIndex(3), 0.01)).gamma, 1e-8);
    EXPECT_THROW(closed_form_b3_inverse_symmetric(0.0), std::domain_error);
    EXPECT_THROW(closed_form_b3_inverse_symmetric(0.5), std::domain_error);
}

TEST(ClosedFormInverseSymmetric, MatchesSolverOnGrid)
{
    for (int i = 1; i <= 49; ++i) {
        const double p = 0.5 * i / 50.0;
        const DriftReport c = closed_form_b3_inverse_symmetric(p);
        const DriftReport s = drifts(symmetric_inverse_measure(ArtinIndex(3), p));
        EXPECT_NEAR(c.gamma, s.gamma, 1e-8) << p;
        EXPECT_NEAR(c.gamma_sigma, s.gamma_sigma, 1e-8) << p;
        EXPECT_NEAR(c.gamma_splus, s.gamma_splus, 1e-8) << p;
        EXPECT_NEAR(c.gamma_delta, s.gamma_delta, 1e-8) << p;
    }
}

TEST(ClosedFormLetterSymmetric, Examples)
{
    const DriftReport q = closed_form_b3_letter_symmetric(0.25);
    EXPECT_NEAR(q.gamma, 0.25, 1e-12);
    const DriftReport d = closed_form_b3_letter_symmetric(0.1);
    const LetterSymmetric want = letter_symmetric(0.1);
    EXPECT_NEAR(d.gamma_sigma, want.gs, 1e-14);
    EXPECT_NEAR(d.gamma_splus, want.gsp, 1e-14);
    EXPECT_NEAR(d.gamma_delta, want.gd, 1e-14);
    EXPECT_NEAR(d.gamma, 0.6, 1e-12);
    // Near p = 1/2 the walk is dominated by a and b and gamma = 4p - 1.
    EXPECT_NEAR(closed_form_b3_letter_symmetric(0.49).gamma, 0.96, 1e-12);
    EXPECT_NEAR(drifts(symmetric_letter_measure(ArtinIndex(3), 0.49)).gamma, 0.96, 1e-10);
}

// The printed sign of gamma_delta would make the inverse-dominated walk drift towards positive Delta powers;
// simulation decides.
TEST(ClosedFormLetterSymmetric, DeltaSignAgainstSimulation)
{
    const double p = 0.1;
    const EstimateReport e = estimate_drifts(symmetric_letter_measure(ArtinIndex(3), p), 20'000, 30, 9);
    EXPECT_NEAR(e.est_gamma_delta.mean, closed_form_b3_letter_symmetric(p).gamma_delta, 3.5 * e.est_gamma_delta.se);
    EXPECT_LT(e.est_gamma_delta.mean, 0.0);
}

TEST(ClosedFormLetterSymmetric, MatchesSolverOnGrid)
{
    for (int i = 1; i <= 48; ++i) {
        const double p = 0.5 * i / 49.0;
        const DriftReport c = closed_form_b3_letter_symmetric(p);
        const DriftReport s = drifts(symmetric_letter_measure(ArtinIndex(3), p));
        EXPECT_NEAR(c.gamma, s.gamma, 1e-8) << p;
        EXPECT_NEAR(c.gamma_sigma, s.gamma_sigma, 1e-8) << p;
        EXPECT_NEAR(c.gamma_splus, s.gamma_splus, 1e-8) << p;
        EXPECT_NEAR(c.gamma_delta, s.gamma_delta, 1e-8) << p;
    }
}

TEST(SimpleWalk, Examples)
{
    EXPECT_NEAR(simple_walk_root(3), 0.5, 1e-13);
    const auto F = simple_walk_polynomials(3, 0.5);
    EXPECT_DOUBLE_EQ(F[2], 0.5);
    EXPECT_DOUBLE_EQ(F[3], 1.0);
    EXPECT_NEAR(simple_walk_closed_form(3).gamma, 0.25, 1e-13);
    EXPECT_NEAR(simple_walk_closed_form(4).gamma, std::pow(std::sqrt(5.0) - 1, 2) / 4, 1e-12);
    EXPECT_NEAR(simple_walk_closed_form(8).gamma, 0.487636, 1e-6);
    EXPECT_TRUE(std::isnan(simple_walk_closed_form(5).gamma_splus));
}

TEST(SimpleWalk, MatchesSolver)
{
    for (int kv = 3; kv <= 12; ++kv) {
        const DriftReport c = simple_walk_closed_form(kv);
        const DriftReport s = drifts(uniform_artin(ArtinIndex(kv)));
        EXPECT_NEAR(c.gamma, s.gamma, 1e-9) << kv;
        EXPECT_NEAR(c.gamma_sigma, s.gamma_sigma, 1e-9) << kv;
        EXPECT_NEAR(c.gamma_delta, s.gamma_delta, 1e-9) << kv;
    }
}

TEST(SimpleWalk, MonotoneLimits)
{
    DriftReport prev = simple_walk_closed_form(3);
    for (int kv = 4; kv <= 40; ++kv) {
        const DriftReport d = simple_walk_closed_form(kv);
        // gamma_sigma and gamma_delta reach 1/3 and -1/6 to double precision from k = 33 on.
        EXPECT_GE(d.gamma_sigma, prev.gamma_sigma);
        EXPECT_LE(d.gamma_delta, prev.gamma_delta);
        EXPECT_GT(d.gamma, prev.gamma) << kv;
        EXPECT_LE(d.gamma_sigma, 1.0 / 3 + 1e-16);
        EXPECT_GE(d.gamma_delta, -1.0 / 6 - 1e-16);
        EXPECT_LT(d.gamma, 0.5);
        prev = d;
    }
    EXPECT_NEAR(prev.gamma_sigma, 1.0 / 3, 1e-15);
    EXPECT_NEAR(prev.gamma_delta, -1.0 / 6, 1e-15);
    EXPECT_NEAR(prev.gamma, 0.5, 1e-9);
}

// The two-mode evaluation agrees with the recurrence where the latter is still well conditioned.
TEST(SimpleWalk, ModesMatchRecurrence)
{
    for (int kv = 3; kv <= 14; ++kv) {
        const SimpleWalkModes m(simple_walk_root_excess(kv));
        const auto F = simple_walk_polynomials(kv, m.x);
        for (int i = 0; i <= kv; ++i) EXPECT_NEAR(m.F(i), F[static_cast<std::size_t>(i)], 1e-9) << kv << " " << i;
        EXPECT_NEAR(m.F(kv), 1.0, 1e-12);
    }
}

TEST(MantaRay, SymmetryAndLinearRegion)
{
    const ArtinIndex k(3);
    const int n = 12;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double p = (i + 0.5) / (2.0 * n), q = (j + 0.5) / (2.0 * n);
            const DriftReport a = drifts(pq_measure(k, p, q));
            const DriftReport b = drifts(pq_measure(k, 0.5 - p, 0.5 - q));
            EXPECT_NEAR(a.gamma, b.gamma, 1e-8);
            if (a.gamma_delta >= 0) {
                EXPECT_NEAR(a.gamma, 2 * (p + q) - 1, 1e-10);
            }
        }
}

TEST(Serialization, CsvAndKeyValue)
{
    const DriftReport d = drifts(uniform_artin(ArtinIndex(3)));
    EXPECT_EQ(drift_csv_header(), "gamma_sigma,gamma_splus,gamma_delta,gamma,branch");
    EXPECT_EQ(to_csv_row(d), "0.25,0.375,-0.125,0.25,case_i=1");
    EXPECT_EQ(to_kv(d), "gamma_sigma = 0.25\ngamma_splus = 0.375\ngamma_delta = -0.125\ngamma = 0.25\nbranch = case_i=1\n");
}
