#pragma once

/**
 * @file acceptance.hpp
 * @brief The nine end-to-end acceptance checks, shared by the test binary and
 *        `artinwalk validate`. Each returns pass/fail with observed values.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "artinwalk/core/geodesic.hpp"
#include "artinwalk/core/length.hpp"
#include "artinwalk/core/normal_form.hpp"
#include "artinwalk/core/text.hpp"
#include "artinwalk/drift/closed_forms.hpp"
#include "artinwalk/drift/drift.hpp"
#include "artinwalk/harmonic/cylinders.hpp"
#include "artinwalk/montecarlo/estimate.hpp"
#include "artinwalk/montecarlo/oracle.hpp"
#include "artinwalk/validation/random_measures.hpp"

namespace artinwalk::validation {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

inline std::string format_line(const CriterionResult& r)
{
    char t[64];
    std::snprintf(t, sizeof t, "%.2fs / %.0fs", r.seconds, r.budget_seconds);
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail +
           " (" + t + ")";
}

namespace detail {

/// Runs body, fails on exceptions, and enforces the time budget.
inline CriterionResult timed(int id, std::string name, double budget, const std::function<bool(std::string&)>& body)
{
    CriterionResult r{id, std::move(name), false, {}, 0.0, budget};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.passed = body(r.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail += std::string(" exception: ") + e.what();
    }
    while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > budget) {
        r.passed = false;
        r.detail += " over time budget";
    }
    return r;
}

inline std::string g(double x) { return artinwalk::detail::fmt12(x); }

/// All Garside words (letters only) of the given length.
inline void for_each_garside_tail(ArtinIndex k, std::size_t len, const std::function<void(const std::vector<TGen>&)>& fn)
{
    const SigmaAlphabet alpha(k);
    std::vector<TGen> w;
    std::function<void()> rec = [&] {
        if (w.size() == len) {
            fn(w);
            return;
        }
        for (std::size_t i = 0; i < alpha.t_size(); ++i) {
            const TGen t = alpha.t_at(i);
            if (!w.empty() && w.back().last() != t.first()) continue;
            w.push_back(t);
            rec();
            w.pop_back();
        }
    };
    rec();
}

} // namespace detail

inline double simple_walk_reference(int k)
{
    switch (k) {
    case 3: return 0.25;
    case 4: return (std::sqrt(5.0) - 1.0) * (std::sqrt(5.0) - 1.0) / 4.0;
    case 5: return (std::sqrt(13.0) - 1.0) * (std::sqrt(13.0) - 1.0) / 16.0;
    case 6: return 0.462598;
    case 7: return 0.475221;
    case 8: return 0.487636;
    default: throw std::out_of_range("no tabulated value");
    }
}

inline CriterionResult criterion_simple_walk()
{
    return detail::timed(1, "simple-walk regression k=3..8", 1.0, [](std::string& out) {
        bool ok = true;
        for (int k = 3; k <= 8; ++k) {
            const double got = compute_drifts(uniform_artin(ArtinIndex(k))).report.gamma;
            const double want = simple_walk_reference(k);
            const double tol = k <= 5 ? 1e-9 : 1e-6;
            const bool pass = std::abs(got - want) <= tol;
            ok = ok && pass;
            out += "k=" + std::to_string(k) + " " + detail::g(got) + (pass ? "" : " expected " + detail::g(want)) + "; ";
        }
        return ok;
    });
}

inline CriterionResult criterion_dual_path()
{
    return detail::timed(2, "solver vs simple-walk closed form", 5.0, [](std::string& out) {
        double worst = 0.0;
        for (int k = 3; k <= 8; ++k) {
            const DriftReport a = compute_drifts(uniform_artin(ArtinIndex(k))).report;
            const DriftReport b = simple_walk_closed_form(k);
            worst = std::max({worst, std::abs(a.gamma_sigma - b.gamma_sigma), std::abs(a.gamma_delta - b.gamma_delta),
                              std::abs(a.gamma - b.gamma)});
        }
        out = "max |diff| = " + detail::g(worst);
        return worst <= 1e-8;
    });
}

inline CriterionResult criterion_b3_inverse_symmetric()
{
    return detail::timed(3, "B3 nu(a)=nu(a^-1) curve", 5.0, [](std::string& out) {
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double p = 0.25 * i / 20.0;
            const DriftReport a = compute_drifts(symmetric_inverse_measure(ArtinIndex(3), p)).report;
            const DriftReport b = closed_form_b3_inverse_symmetric(p);
            worst = std::max({worst, std::abs(a.gamma - b.gamma), std::abs(a.gamma_sigma - b.gamma_sigma),
                              std::abs(a.gamma_splus - b.gamma_splus), std::abs(a.gamma_delta - b.gamma_delta)});
        }
        const double at_quarter = closed_form_b3_inverse_symmetric(0.25).gamma;
        const double solver_quarter = compute_drifts(symmetric_inverse_measure(ArtinIndex(3), 0.25)).report.gamma;
        out = "max |diff| = " + detail::g(worst) + ", gamma(1/4) = " + detail::g(at_quarter) + " / " +
              detail::g(solver_quarter);
        return worst <= 1e-8 && std::abs(at_quarter - 0.25) <= 1e-8 && std::abs(solver_quarter - 0.25) <= 1e-8;
    });
}

inline CriterionResult criterion_b3_letter_symmetric()
{
    return detail::timed(4, "B3 nu(a)=nu(b) curve", 5.0, [](std::string& out) {
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double p = 0.5 * i / 21.0;
            const DriftReport a = compute_drifts(symmetric_letter_measure(ArtinIndex(3), p)).report;
            const DriftReport b = closed_form_b3_letter_symmetric(p);
            worst = std::max({worst, std::abs(a.gamma - b.gamma), std::abs(a.gamma_sigma - b.gamma_sigma),
                              std::abs(a.gamma_splus - b.gamma_splus), std::abs(a.gamma_delta - b.gamma_delta)});
        }
        out = "max |diff| = " + detail::g(worst);
        return worst <= 1e-8;
    });
}

/// Cell-centred grid p_i = (i + 1/2) / (2N), which is symmetric under p -> 1/2 - p.
inline double grid_point(int i, int n) { return (i + 0.5) / (2.0 * n); }

inline CriterionResult criterion_manta_ray(int n = 40)
{
    return detail::timed(5, "manta-ray surface properties", 30.0, [n](std::string& out) {
        const ArtinIndex k(3);
        std::vector<std::vector<DriftReport>> G(static_cast<std::size_t>(n), std::vector<DriftReport>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    compute_drifts(pq_measure(k, grid_point(i, n), grid_point(j, n))).report;
        auto at = [&](int i, int j) -> const DriftReport& { return G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
        double sym = 0.0, linear = 0.0;
        std::size_t nonneg = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                sym = std::max(sym, std::abs(at(i, j).gamma - at(n - 1 - i, n - 1 - j).gamma));
                if (at(i, j).gamma_delta >= 0.0) {
                    ++nonneg;
                    linear = std::max(linear, std::abs(at(i, j).gamma - (2.0 * (grid_point(i, n) + grid_point(j, n)) - 1.0)));
                }
            }
        }
        // A jump between adjacent cells may not exceed 10x the larger neighbouring jump along the same line.
        std::size_t bad = 0;
        double worst_ratio = 0.0;
        auto scan = [&](auto value) {
            for (int line = 0; line < n; ++line) {
                std::vector<double> jump;
                for (int s = 0; s + 1 < n; ++s) jump.push_back(std::abs(value(line, s + 1) - value(line, s)));
                for (std::size_t s = 0; s < jump.size(); ++s) {
                    double local = 1e-12;
                    if (s > 0) local = std::max(local, jump[s - 1]);
                    if (s + 1 < jump.size()) local = std::max(local, jump[s + 1]);
                    worst_ratio = std::max(worst_ratio, jump[s] / local);
                    if (jump[s] > 10.0 * local) ++bad;
                }
            }
        };
        scan([&](int line, int s) { return at(line, s).gamma; });
        scan([&](int line, int s) { return at(s, line).gamma; });
        out = "symmetry " + detail::g(sym) + ", linear region " + std::to_string(nonneg) + " cells max err " +
              detail::g(linear) + ", worst jump ratio " + detail::g(worst_ratio);
        return sym <= 1e-8 && linear <= 1e-10 && bad == 0;
    });
}

inline CriterionResult criterion_oracle(std::vector<int> ks = {3, 4, 5}, int radius = 8)
{
    return detail::timed(6, "length algorithm vs BFS ball", 120.0, [ks, radius](std::string& out) {
        std::size_t mismatches = 0, total = 0;
        for (int kv : ks) {
            const ArtinIndex k(kv);
            for (const auto& [g, d] : bfs_oracle(k, radius)) {
                ++total;
                const MinimalWord mw = length_and_minimal_word(k, g);
                const bool ok = mw.length == d && static_cast<std::int64_t>(mw.word.size()) == d &&
                                canonicalize(k, std::span<const ArtinLetter>(mw.word)) == g;
                if (!ok) ++mismatches;
            }
        }
        out = std::to_string(total) + " elements, " + std::to_string(mismatches) + " mismatches";
        return mismatches == 0;
    });
}

inline CriterionResult criterion_formula_suite(std::size_t measures_per_k = 20, std::uint64_t seed = 7)
{
    return detail::timed(7, "formula consistency on random measures", 60.0, [=](std::string& out) {
        double d18 = 0.0, d26 = 0.0, dauto = 0.0, dkappa = 0.0;
        std::size_t count = 0;
        for (int kv : {3, 4, 5, 6}) {
            const ArtinIndex k(kv);
            Rng rng(replica_seed(seed, static_cast<std::uint64_t>(kv)));
            for (std::size_t m = 0; m < measures_per_k; ++m) {
                const StepMeasureQuotient mu = random_quotient_measure(k, rng);
                const HarmonicSolution sol = solve_traffic(mu);
                const double gs = gamma_sigma(mu, sol);
                d18 = std::max(d18, std::abs(gs - gamma_sigma_boundary(mu, sol)));
                d26 = std::max(d26, std::abs(gamma_splus(mu, sol) - gamma_splus_from_frequencies(sol, gs)));
                const HarmonicAutomaton A = harmonic_automaton(sol);
                for (std::size_t len = 1; len <= 3; ++len)
                    detail::for_each_garside_tail(k, len, [&](const std::vector<TGen>& u) {
                        dauto = std::max(dauto, std::abs(A.eval(u) - mu_cylinder(sol, u)));
                    });
                dkappa = std::max(dkappa, kappa_stationarity_residual(mu, sol, 3));
                ++count;
            }
        }
        out = std::to_string(count) + " measures; gamma_sigma forms " + detail::g(d18) + ", S+ relation " +
              detail::g(d26) + ", automaton " + detail::g(dauto) + ", kappa residual " + detail::g(dkappa);
        return d18 <= 1e-10 && d26 <= 1e-10 && dauto <= 1e-10 && dkappa <= 1e-10;
    });
}

inline CriterionResult criterion_monte_carlo(std::uint64_t steps = 100'000, std::size_t replicas = 50,
                                             std::uint64_t seed = 2024)
{
    return detail::timed(8, "Monte Carlo agreement", 120.0, [=](std::string& out) {
        struct Case {
            std::string name;
            StepMeasureFull nu;
            std::optional<DriftReport> exact;
        };
        std::vector<Case> cases;
        cases.push_back({"k=3 simple", uniform_artin(ArtinIndex(3)), DriftReport{0.25, 0.375, -0.125, 0.25, "", {}}});
        cases.push_back({"k=3 asymmetric", artin_weights(ArtinIndex(3), 0.4, 0.3, 0.2, 0.1), std::nullopt});
        cases.push_back({"k=4 asymmetric", artin_weights(ArtinIndex(4), 0.15, 0.35, 0.3, 0.2), std::nullopt});
        bool ok = true;
        double worst = 0.0;
        for (std::size_t c = 0; c < cases.size(); ++c) {
            const DriftReport want = cases[c].exact ? *cases[c].exact : compute_drifts(cases[c].nu).report;
            const EstimateReport est = estimate_drifts(cases[c].nu, steps, replicas, replica_seed(seed, c));
            const std::pair<const ReplicaStats*, double> pairs[] = {{&est.est_gamma, want.gamma},
                                                                    {&est.est_gamma_sigma, want.gamma_sigma},
                                                                    {&est.est_gamma_splus, want.gamma_splus},
                                                                    {&est.est_gamma_delta, want.gamma_delta}};
            double case_worst = 0.0;
            for (const auto& [s, w] : pairs) case_worst = std::max(case_worst, std::abs(s->mean - w) / s->se);
            worst = std::max(worst, case_worst);
            ok = ok && case_worst <= 3.0;
            const double zd = (est.est_gamma_debiased.mean - want.gamma) / est.est_gamma_debiased.se;
            out += cases[c].name + " max |z| = " + detail::g(case_worst) + " (debiased gamma z = " + detail::g(zd) + "); ";
        }
        return ok;
    });
}

inline CriterionResult criterion_combinatorics(std::size_t sequences = 1000, std::size_t length = 200,
                                               std::uint64_t seed = 11)
{
    return detail::timed(9, "psi / psi^-1 and prefix stability", 60.0, [=](std::string& out) {
        const ArtinIndex k3(3);
        constexpr TGen A{Letter::a, 1}, B{Letter::b, 1}, AB{Letter::a, 2}, BA{Letter::b, 2};
        std::set<std::vector<SigmaGen>> got;
        for (const auto& w : psi_inverse(k3, GarsideQuotientWord{{A, AB, B}, false})) got.insert(w.letters);
        const std::set<std::vector<SigmaGen>> expect{{{A, false}, {AB, false}, {B, false}},
                                                     {{A, false}, {AB, true}, {A, true}},
                                                     {{A, true}, {BA, false}, {A, true}},
                                                     {{A, true}, {BA, true}, {B, false}}};
        const bool example = got == expect;

        std::size_t roundtrip_bad = 0, size_bad = 0, words = 0;
        for (int kv : {3, 4, 5}) {
            const ArtinIndex k(kv);
            for (std::size_t len = 1; len <= 5; ++len)
                detail::for_each_garside_tail(k, len, [&](const std::vector<TGen>& u) {
                    for (bool flag : {false, true}) {
                        if (flag && k.even()) continue;
                        const GarsideQuotientWord w{u, flag};
                        const auto pre = psi_inverse(k, w);
                        ++words;
                        if (pre.size() != (k.odd() ? std::size_t{1} << (len - 1) : 1u)) ++size_bad;
                        for (const auto& v : pre)
                            if (!(psi(k, v) == w)) ++roundtrip_bad;
                    }
                });
        }

        std::size_t lemma_bad = 0;
        std::size_t worst_d = 0;
        for (std::size_t s = 0; s < sequences; ++s) {
            const ArtinIndex k(3 + static_cast<int>(s % 3));
            Rng rng(replica_seed(seed, s));
            const StepMeasureQuotient mu = random_quotient_measure(k, rng);
            const auto seq = sample_quotient_steps(mu, length, rng);
            GeodesicWord prev = backward_fold(k, std::span<const SigmaBar>(seq.data(), 1));
            for (std::size_t n = 2; n <= length; ++n) {
                const GeodesicWord cur = backward_fold(k, std::span<const SigmaBar>(seq.data(), n));
                const std::size_t d = prefix_distance(prev, cur);
                worst_d = std::max(worst_d, d);
                if (d > 2) ++lemma_bad;
                prev = cur;
            }
        }
        out = std::string("example ") + (example ? "ok" : "WRONG") + ", " + std::to_string(words) +
              " Garside words: round-trip failures " + std::to_string(roundtrip_bad) + ", size failures " +
              std::to_string(size_bad) + ", max prefix distance " + std::to_string(worst_d);
        return example && roundtrip_bad == 0 && size_bad == 0 && lemma_bad == 0;
    });
}

/// All criteria in order; `quick` skips the Monte Carlo check.
inline std::vector<CriterionResult> run_all(bool quick = false)
{
    std::vector<CriterionResult> out;
    out.push_back(criterion_simple_walk());
    out.push_back(criterion_dual_path());
    out.push_back(criterion_b3_inverse_symmetric());
    out.push_back(criterion_b3_letter_symmetric());
    out.push_back(criterion_manta_ray());
    out.push_back(criterion_oracle());
    out.push_back(criterion_formula_suite());
    if (!quick) out.push_back(criterion_monte_carlo());
    out.push_back(criterion_combinatorics());
    return out;
}

} // namespace artinwalk::validation
