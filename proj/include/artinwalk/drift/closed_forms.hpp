#pragma once

/**
 * @file closed_forms.hpp
 * @brief Closed-form drifts for three symmetric families.
 *
 *  - B_3 with nu(a) = nu(a^-1) = p, nu(b) = nu(b^-1) = 1/2 - p (cubic root).
 *  - B_3 with nu(a) = nu(b) = p, nu(a^-1) = nu(b^-1) = 1/2 - p (square roots).
 *  - The simple random walk on A_k (root of F_k(x) = 1).
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/drift/drift.hpp"
#include "artinwalk/harmonic/measure.hpp"

namespace artinwalk {

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
double bisect(F f, double lo, double hi, double tol = 1e-14)
{
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Real roots of c0 + c1 x + c2 x^2 (c2 may be zero).
inline std::vector<double> quadratic_roots(double c2, double c1, double c0)
{
    if (c2 == 0.0) {
        if (c1 == 0.0) return {};
        return {-c0 / c1};
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return {};
    const double s = std::sqrt(disc);
    return {(-c1 - s) / (2.0 * c2), (-c1 + s) / (2.0 * c2)};
}

} // namespace detail

/**
 * Smallest root in (0, 1) of c3 x^3 + c2 x^2 + c1 x + c0. Sign changes are
 * located on a 1e-3 grid refined by the critical points, so two roots closer
 * than the grid step are still separated; a critical point where the
 * polynomial vanishes is accepted as a double root.
 */
inline std::optional<double> smallest_cubic_root_in_unit_interval(double c3, double c2, double c1, double c0)
{
    auto P = [&](double x) { return ((c3 * x + c2) * x + c1) * x + c0; };
    std::vector<double> pts;
    for (int i = 0; i <= 1000; ++i) pts.push_back(i * 1e-3);
    const auto crit = detail::quadratic_roots(3.0 * c3, 2.0 * c2, c1);
    for (double c : crit)
        if (c > 0.0 && c < 1.0) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    const double scale = std::abs(c3) + std::abs(c2) + std::abs(c1) + std::abs(c0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (b <= a) continue;
        const double fa = P(a), fb = P(b);
        const bool is_crit_a = std::find(crit.begin(), crit.end(), a) != crit.end();
        if (a > 0.0 && (fa == 0.0 || (is_crit_a && std::abs(fa) <= 1e-14 * scale))) return a;
        if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) return detail::bisect(P, a, b);
        if (fb == 0.0 && b < 1.0) return b;
    }
    return std::nullopt;
}

/// nu(a) = nu(a^-1) = p, nu(b) = nu(b^-1) = 1/2 - p on B_3.
inline DriftReport closed_form_b3_inverse_symmetric(double p)
{
    if (!(p > 0.0 && p < 0.5)) throw std::domain_error("p must lie in (0, 1/2)");
    if (p > 0.25) p = 0.5 - p;
    const double c3 = 2.0 * (4.0 * p - 1.0);
    const double c2 = 24.0 * p * p - 18.0 * p + 1.0;
    const double c1 = p * (-12.0 * p + 7.0);
    const double c0 = p * (2.0 * p - 1.0);
    const auto u = smallest_cubic_root_in_unit_interval(c3, c2, c1, c0);
    if (!u) throw NumericalError("no root of the drift polynomial in (0, 1)");
    const double g = p + (1.0 - 4.0 * p) * *u;
    return {g, 1.5 * g, -0.5 * g, g, "closed_form", {}};
}

/**
 * nu(a) = nu(b) = p, nu(a^-1) = nu(b^-1) = 1/2 - p on B_3. The expressions for
 * gamma_splus and gamma_delta are 0/0 at p = 1/4; that point goes through the
 * general solver instead.
 */
inline DriftReport closed_form_b3_letter_symmetric(double p, const DriftOptions& opt = {})
{
    if (!(p > 0.0 && p < 0.5)) throw std::domain_error("p must lie in (0, 1/2)");
    if (std::abs(p - 0.25) < 1e-9) {
        DriftReport r = compute_drifts(symmetric_letter_measure(ArtinIndex(3), p), opt).report;
        r.branch = "closed_form";
        return r;
    }
    const double s = std::sqrt(16.0 * p * p - 8.0 * p + 5.0);
    const double den = 2.0 * (1.0 - 4.0 * p);
    DriftReport r;
    r.gamma_sigma = (-1.0 + s) / 4.0;
    r.gamma_splus = (4.0 * p * p + p + 1.0 - 3.0 * p * s) / den;
    // Sign fixed so that gamma_delta < 0 when inverse letters dominate.
    r.gamma_delta = -(12.0 * p * p - 5.0 * p + 1.0 - p * s) / den;
    r.gamma = std::max({1.0 - 4.0 * p, (1.0 - 2.0 * p) * (-1.0 - 4.0 * p + s) / den,
                        p * (-3.0 + 4.0 * p + s) / (-1.0 + 4.0 * p), -1.0 + 4.0 * p});
    r.branch = "closed_form";
    return r;
}

/// F_0 = 1, F_1 = x, F_n = 2(2 - x) F_{n-1} - F_{n-2}; returns F_0 .. F_n.
inline std::vector<double> simple_walk_polynomials(int n, double x)
{
    std::vector<double> F{1.0, x};
    for (int i = 2; i <= n; ++i) F.push_back(2.0 * (2.0 - x) * F[static_cast<std::size_t>(i - 1)] - F[static_cast<std::size_t>(i - 2)]);
    F.resize(static_cast<std::size_t>(n + 1));
    return F;
}

/**
 * F_n = alpha.l+^n + beta.l-^n with l+.l- = 1, l+ + l- = 2(2 - x). As k grows
 * the root tends to 1/3, where l- -> 1/3, l+ -> 3 and alpha ~ 3^-k, so the
 * root is carried as eps = 3x - 1 and x - l- is formed without cancellation.
 */
struct SimpleWalkModes {
    double eps = 0.0;
    double x = 0.0;
    double lp = 0.0, lm = 0.0;
    double alpha = 0.0, beta = 0.0;

    explicit SimpleWalkModes(double e) : eps(e), x((1.0 + e) / 3.0)
    {
        // d = x - l- solves d^2 + 4(1 - x) d + (3x - 1)(x - 1) = 0.
        const double B = 4.0 * (2.0 - e) / 3.0;
        const double C = e * (e - 2.0) / 3.0;
        const double d = -2.0 * C / (B + std::sqrt(B * B - 4.0 * C));
        lm = x - d;
        lp = 1.0 / lm;
        alpha = d / (lp - lm);
        beta = 1.0 - alpha;
    }

    double F(int n) const { return alpha * std::pow(lp, n) + beta * std::pow(lm, n); }
};

/// eps = 3x - 1 for the unique x in (0, 1) with F_k(x) = 1 (x = 1 is a further, trivial solution).
inline double simple_walk_root_excess(int k)
{
    if (k < 3) detail::throw_invalid_index(k);
    auto f = [k](double e) { return SimpleWalkModes(e).F(k) - 1.0; };
    // Log-spaced scan from just below the trivial root eps = 2 down to 1e-300, then the negative side.
    double prev = 1.99;
    double fprev = f(prev);
    for (int i = 1; i <= 30'000; ++i) {
        const double e = 1.99 * std::pow(10.0, -i / 100.0);
        const double fe = f(e);
        if (fe == 0.0) return e;
        if ((fe < 0.0) != (fprev < 0.0)) return detail::bisect(f, e, prev, 0.0);
        prev = e;
        fprev = fe;
    }
    prev = 0.0;
    fprev = f(prev);
    for (int i = 1; i < 100'000; ++i) {
        const double e = -static_cast<double>(i) / 100'000.0;
        const double fe = f(e);
        if ((fe < 0.0) != (fprev < 0.0)) return detail::bisect(f, e, prev, 0.0);
        prev = e;
        fprev = fe;
    }
    throw NumericalError("F_k(x) = 1 has no solution in (0, 1)");
}

inline double simple_walk_root(int k) { return (1.0 + simple_walk_root_excess(k)) / 3.0; }

/// Simple random walk on A_k. gamma_splus is not part of the closed form and is reported as NaN.
inline DriftReport simple_walk_closed_form(int k)
{
    const SimpleWalkModes m(simple_walk_root_excess(k));
    const double x = m.x;
    const int j = k / 2;
    double s = 0.0;
    if (k % 2 == 0) {
        for (int i = 1; i <= j - 1; ++i) s += i * m.F(i);
        s += 0.5 * j * m.F(j);
    } else {
        for (int i = 1; i <= j; ++i) s += i * m.F(i);
    }
    DriftReport r;
    r.gamma_sigma = (1.0 - x) / 2.0;
    r.gamma_delta = -(1.0 - x) / 4.0;
    r.gamma_splus = std::numeric_limits<double>::quiet_NaN();
    r.gamma = (1.0 - x) * s;
    r.branch = "closed_form";
    return r;
}

} // namespace artinwalk
