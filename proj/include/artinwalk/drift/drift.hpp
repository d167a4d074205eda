#pragma once

/**
 * @file drift.hpp
 * @brief The four drifts of a walk on A_k computed from the traffic solution.
 *
 *   gamma_sigma  quotient length |X_n|_Sigma / n
 *   gamma_splus  positive-letter count of the normal-form tail / n
 *   gamma_delta  Delta-exponent / n
 *   gamma        word length over {a, b, a^-1, b^-1} / n
 */

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/harmonic/cylinders.hpp"
#include "artinwalk/harmonic/measure.hpp"
#include "artinwalk/harmonic/traffic.hpp"

namespace artinwalk {

class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DriftReport {
    double gamma_sigma = 0.0;
    double gamma_splus = 0.0;
    double gamma_delta = 0.0;
    double gamma = 0.0;
    std::string branch;        ///< "delta_nonneg", "case_i=N" or "closed_form"
    std::vector<double> p_agg; ///< p_agg[i-1] for letters of length i; empty for closed forms
};

namespace detail {

/// Delta.u^-1 in the quotient as a Sigma letter: u* for k odd; absent for k even.
inline double mu_delta_u_inv(const StepMeasureQuotient& mu, TGen u)
{
    const ArtinIndex k = mu.k();
    if (k.even()) return 0.0;
    return mu(SigmaGen{star(k, u), false});
}

inline double mu_into(const StepMeasureQuotient& mu, TGen u)
{
    double s = 0.0;
    for (const SigmaGen& v : mu.alphabet().gens())
        if (last(mu.k(), v) == u.first()) s += mu(v);
    return s;
}

} // namespace detail

/// gamma_sigma as a linear functional of R.
inline double gamma_sigma(const StepMeasureQuotient& mu, const HarmonicSolution& sol)
{
    const ArtinIndex k = mu.k();
    double g = 0.0;
    for (std::size_t ti = 0; ti < sol.alphabet.t_size(); ++ti) {
        const TGen u = sol.alphabet.t_at(ti);
        const double inv = mu(sigma_inverse(k, SigmaGen{u, false}));
        g += (-inv - detail::mu_delta_u_inv(mu, u) + detail::mu_into(mu, u)) * sol.R_of(u);
    }
    return g;
}

/**
 * gamma_sigma as the mean length increment of the left action on the boundary:
 * a step v shortens the boundary word when v*xi_0 is 1 or Delta and lengthens
 * it when v*xi_0 has two letters. Cylinder masses come from mu_cylinder.
 */
inline double gamma_sigma_boundary(const StepMeasureQuotient& mu, const HarmonicSolution& sol)
{
    const ArtinIndex k = mu.k();
    double g = 0.0;
    for (const SigmaGen& v : mu.alphabet().gens()) {
        const double m = mu(v);
        if (m == 0.0) continue;
        double inc = 0.0;
        for (std::size_t ti = 0; ti < sol.alphabet.t_size(); ++ti) {
            const TGen u = sol.alphabet.t_at(ti);
            const SmallProduct c = mult_sigma(k, v, SigmaGen{u, false});
            const TGen word[] = {u};
            if (c.is_one() || c.is_delta()) inc -= mu_cylinder(sol, word);
            if (c.is_big()) inc += mu_cylinder(sol, word);
        }
        g += m * inc;
    }
    return g;
}

inline double gamma_splus(const StepMeasureQuotient& mu, const HarmonicSolution& sol)
{
    const ArtinIndex k = mu.k();
    const auto supp = mu.support();
    double g = 0.0;
    for (std::size_t ti = 0; ti < sol.alphabet.t_size(); ++ti) {
        const TGen u = sol.alphabet.t_at(ti);
        const double len = u.len;
        double c = -mu(sigma_inverse(k, SigmaGen{u, false})) * len - detail::mu_delta_u_inv(mu, u) * len;
        for (const SigmaBar& v : supp) {
            const SmallProduct p = mult_sigma(k, v, SigmaBar::of({u, false}));
            if (p.is_sigma()) c += mu(v) * (p.gen.t.len - len);
            if (v.is_sigma() && last(k, v.gen) == u.first()) c += mu(v) * v.gen.t.len;
        }
        g += c * sol.R_of(u);
    }
    return g;
}

/// sum_i i.p(i).gamma_sigma
inline double gamma_splus_from_frequencies(const HarmonicSolution& sol, double g_sigma)
{
    double s = 0.0;
    for (std::size_t i = 0; i < sol.p_agg.size(); ++i) s += static_cast<double>(i + 1) * sol.p_agg[i];
    return s * g_sigma;
}

/**
 * gamma_delta = E[theta], theta being the Delta-exponent created when the
 * boundary word xi is left-multiplied by one step. A step t.Delta^n is
 * Delta^n.bar^n(t); the positive part v = bar^n(t) merges with xi_0 = u into
 * an alternating word of length |v| + |u| whenever Last(v) != First(u), and
 * that word contains Delta exactly when the length reaches k.
 */
inline double gamma_delta(const StepMeasureFull& nu, const HarmonicSolution& sol)
{
    const ArtinIndex k = nu.k();
    double g = nu.mean_delta_exp();
    for (const FullAtom& x : nu.atoms()) {
        if (!x.t) continue;
        const TGen v = bar_pow(k, *x.t, x.delta_exp);
        for (std::size_t ti = 0; ti < sol.alphabet.t_size(); ++ti) {
            const TGen u = sol.alphabet.t_at(ti);
            if (v.last() != u.first() && v.len + u.len >= k.value()) g += x.prob * sol.R_of(u);
        }
    }
    return g;
}

struct TotalDrift {
    double gamma = 0.0;
    int case_index = 0; ///< 0 when gamma_delta >= 0
    std::string branch;
};

/// gamma from the other three drifts and the letter-length frequencies, for any k.
inline TotalDrift gamma_total(int k, double g_sigma, double g_splus, double g_delta, const std::vector<double>& p_agg)
{
    if (static_cast<int>(p_agg.size()) != k - 1) throw std::invalid_argument("p_agg must have k-1 entries");
    if (g_delta >= 0.0) return {g_splus + k * g_delta, 0, "delta_nonneg"};
    const double a = -g_delta;
    auto p = [&](int len) { return p_agg[static_cast<std::size_t>(len - 1)]; };
    int ell = 0;
    double partial = 0.0;
    for (int l = 1; l <= k - 1; ++l) {
        partial += p(k - l) * g_sigma;
        if (partial < a)
            ell = l;
        else
            break;
    }
    const int i = ell + 1;
    double g = g_splus - (k - 2 * i) * a;
    for (int j = 1; j <= i - 1; ++j) g -= (2 * i - 2 * j) * p(k - j) * g_sigma;
    return {g, i, "case_i=" + std::to_string(i)};
}

/// The four-case formula for k = 3, written out separately as a cross-check.
inline double gamma_total_k3(double g_sigma, double g_splus, double g_delta, double p2)
{
    const double a = std::abs(g_delta);
    if (g_delta >= 0.0) return g_splus + 3.0 * g_delta;
    if (a <= p2 * g_sigma) return g_splus - a;
    if (a <= g_sigma) return g_splus + a - 2.0 * p2 * g_sigma;
    return -g_splus + 3.0 * a;
}

struct DriftOptions {
    SolverOptions solver{};
    /// Cross-checks must hold within this multiple of the solver tolerance.
    double check_factor = 10.0;
    bool cross_check = true;
};

struct DriftResult {
    HarmonicSolution solution;
    DriftReport report;
};

/// Full pipeline: project nu, solve the traffic equations, evaluate and cross-check the drifts.
inline DriftResult compute_drifts(const StepMeasureFull& nu, const DriftOptions& opt = {})
{
    const StepMeasureQuotient mu = project(nu);
    HarmonicSolution sol = solve_traffic(mu, opt.solver);
    DriftReport rep;
    rep.gamma_sigma = gamma_sigma(mu, sol);
    rep.gamma_splus = gamma_splus(mu, sol);
    rep.gamma_delta = gamma_delta(nu, sol);
    rep.p_agg = sol.p_agg;
    if (opt.cross_check) {
        const double bound = opt.check_factor * opt.solver.tol;
        const double alt = gamma_sigma_boundary(mu, sol);
        if (std::abs(alt - rep.gamma_sigma) > bound)
            throw ConsistencyError("gamma_sigma formulas disagree: " + std::to_string(rep.gamma_sigma) + " vs " +
                                   std::to_string(alt));
        const double rel = gamma_splus_from_frequencies(sol, rep.gamma_sigma);
        if (std::abs(rel - rep.gamma_splus) > bound)
            throw ConsistencyError("gamma_splus violates the letter-frequency relation: " +
                                   std::to_string(rep.gamma_splus) + " vs " + std::to_string(rel));
    }
    const TotalDrift t = gamma_total(nu.k().value(), rep.gamma_sigma, rep.gamma_splus, rep.gamma_delta, sol.p_agg);
    rep.gamma = t.gamma;
    rep.branch = t.branch;
    return {std::move(sol), std::move(rep)};
}

inline std::string drift_csv_header() { return "gamma_sigma,gamma_splus,gamma_delta,gamma,branch"; }

inline std::string to_csv_row(const DriftReport& r)
{
    return detail::fmt12(r.gamma_sigma) + "," + detail::fmt12(r.gamma_splus) + "," + detail::fmt12(r.gamma_delta) +
           "," + detail::fmt12(r.gamma) + "," + r.branch;
}

inline std::string to_kv(const DriftReport& r)
{
    std::string out;
    out += "gamma_sigma = " + detail::fmt12(r.gamma_sigma) + "\n";
    out += "gamma_splus = " + detail::fmt12(r.gamma_splus) + "\n";
    out += "gamma_delta = " + detail::fmt12(r.gamma_delta) + "\n";
    out += "gamma = " + detail::fmt12(r.gamma) + "\n";
    out += "branch = " + r.branch + "\n";
    return out;
}

} // namespace artinwalk
