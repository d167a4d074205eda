#pragma once

/**
 * @file traffic.hpp
 * @brief The traffic equations x = Phi(x) on the simplex over Sigma and their solution.
 *
 * For u in Sigma, with S_x = sum of x(v) over v in Sigma with First(v) = x,
 *
 *   Phi(x)(u) = mu(u) S_{Last u}
 *             + sum over v in Sigma-bar, w in Sigma with v*w = u of mu(v) x(w)
 *             + sum over v*w = 1,     First(u) = Last(w)        of mu(v) x(w)/S_{Last w} x(u)
 *             + sum over v*w = Delta, First(iota(u).Delta) = Last(w) of mu(v) x(w)/S_{Last w} x(iota(u).Delta)
 *
 * The letters v = 1 and v = Delta of Sigma-bar enter only through the second
 * sum (1*w = w, Delta*w = iota(w).Delta). Phi is positively homogeneous of
 * degree one and maps the simplex to itself.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/text.hpp"
#include "artinwalk/harmonic/measure.hpp"

namespace artinwalk {

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Precomputed index structure of Phi for one measure.
class TrafficMap {
public:
    explicit TrafficMap(const StepMeasureQuotient& mu) : alpha_(mu.alphabet()), n_(alpha_.size())
    {
        const ArtinIndex k = mu.k();
        first_.resize(n_);
        last_.resize(n_);
        twist_.resize(n_);
        own_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const SigmaGen u = alpha_[i];
            first_[i] = static_cast<int>(first(u));
            last_[i] = static_cast<int>(last(k, u));
            twist_[i] = alpha_.index(twist(k, u));
            own_[i] = mu(u);
        }
        for (const SigmaBar& v : mu.support()) {
            const double m = mu(v);
            for (std::size_t j = 0; j < n_; ++j) {
                const SmallProduct c = mult_sigma(k, v, SigmaBar::of(alpha_[j]));
                switch (c.kind) {
                case SmallProduct::Kind::sigma: fuse_.push_back({m, j, alpha_.index(c.gen)}); break;
                case SmallProduct::Kind::one: cancel_.push_back({m, j, 0}); break;
                case SmallProduct::Kind::delta: absorb_.push_back({m, j, 0}); break;
                case SmallProduct::Kind::big: break;
                }
            }
        }
    }

    std::size_t size() const noexcept { return n_; }
    const SigmaAlphabet& alphabet() const noexcept { return alpha_; }

    /// S_a, S_b.
    std::array<double, 2> letter_sums(const Eigen::VectorXd& x) const
    {
        std::array<double, 2> s{0.0, 0.0};
        for (std::size_t i = 0; i < n_; ++i) s[first_[i]] += x[static_cast<Eigen::Index>(i)];
        return s;
    }

    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const
    {
        const auto s = letter_sums(x);
        Eigen::VectorXd out(static_cast<Eigen::Index>(n_));
        for (std::size_t i = 0; i < n_; ++i) out[idx(i)] = own_[i] * s[last_[i]];
        for (const Term& t : fuse_) out[idx(t.to)] += t.coef * x[idx(t.from)];
        // Cancellation and Delta-absorption rates, grouped by the letter Last(w).
        std::array<double, 2> cancel{0.0, 0.0}, absorb{0.0, 0.0};
        for (const Term& t : cancel_) cancel[last_[t.from]] += t.coef * x[idx(t.from)] / s[last_[t.from]];
        for (const Term& t : absorb_) absorb[last_[t.from]] += t.coef * x[idx(t.from)] / s[last_[t.from]];
        for (std::size_t i = 0; i < n_; ++i) {
            out[idx(i)] += cancel[first_[i]] * x[idx(i)];
            // First(iota(u).Delta) = swap(First(u))
            out[idx(i)] += absorb[1 - first_[i]] * x[idx(twist_[i])];
        }
        return out;
    }

private:
    struct Term {
        double coef;
        std::size_t from;
        std::size_t to;
    };

    static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

    SigmaAlphabet alpha_;
    std::size_t n_;
    std::vector<int> first_, last_;
    std::vector<std::size_t> twist_;
    std::vector<double> own_;
    std::vector<Term> fuse_, cancel_, absorb_;
};

/// Phi(x) for a single evaluation.
inline Eigen::VectorXd traffic_map(const StepMeasureQuotient& mu, const Eigen::VectorXd& x)
{
    if (x.size() != static_cast<Eigen::Index>(mu.alphabet().size()))
        throw std::invalid_argument("traffic_map: vector size does not match Sigma");
    if ((x.array() <= 0.0).any()) throw std::invalid_argument("traffic_map: x must be strictly positive");
    return TrafficMap(mu)(x);
}

struct SolverOptions {
    double tol = 1e-12;
    long max_iter = 1'000'000;
    double damping = 0.5;
    /// Optional starting point (defaults to the barycentre).
    Eigen::VectorXd start;
};

/// Solution of the traffic equations with the derived quantities used by the drift formulas.
struct HarmonicSolution {
    ArtinIndex k{3};
    SigmaAlphabet alphabet{ArtinIndex(3)};
    Eigen::VectorXd r;      ///< indexed by alphabet
    Eigen::VectorXd q;      ///< q(u) = r(u) / r(Next(u))
    Eigen::VectorXd R;      ///< indexed by T (alphabet.t_index)
    Eigen::MatrixXd P;      ///< P(u, v) = r(v) / r(Next(u)) for v in Next(u)
    Eigen::VectorXd p_stat; ///< stationary vector of P
    std::vector<double> p_agg; ///< p_agg[i-1] = total stationary mass of letters of length i
    double residual = 0.0;
    long iterations = 0;

    double r_of(SigmaGen u) const { return r[static_cast<Eigen::Index>(alphabet.index(u))]; }
    double q_of(SigmaGen u) const { return q[static_cast<Eigen::Index>(alphabet.index(u))]; }
    double R_of(TGen t) const { return R[static_cast<Eigen::Index>(alphabet.t_index(t))]; }
    double p_of(SigmaGen u) const { return p_stat[static_cast<Eigen::Index>(alphabet.index(u))]; }
    double p_len(int i) const { return p_agg.at(static_cast<std::size_t>(i - 1)); }
};

namespace detail {

inline double max_residual(const TrafficMap& phi, const Eigen::VectorXd& x)
{
    return (phi(x) - x).lpNorm<Eigen::Infinity>();
}

/// One Newton step on F(x) = Phi(x) - x with the normalisation sum(x) = 1 replacing the last row.
inline bool newton_step(const TrafficMap& phi, Eigen::VectorXd& x, double& res)
{
    const Eigen::Index n = x.size();
    const Eigen::VectorXd f = phi(x) - x;
    Eigen::MatrixXd J(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double h = 1e-7 * std::max(x[j], 1e-3);
        Eigen::VectorXd xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        if (xm[j] <= 0.0) xm[j] = x[j];
        J.col(j) = ((phi(xp) - xp) - (phi(xm) - xm)) / (xp[j] - xm[j]);
    }
    Eigen::VectorXd rhs = -f;
    J.row(n - 1).setOnes();
    rhs[n - 1] = 1.0 - x.sum();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const Eigen::VectorXd dx = lu.solve(rhs);
    if (!dx.allFinite()) return false;
    for (double t = 1.0; t > 1e-6; t *= 0.5) {
        Eigen::VectorXd y = x + t * dx;
        if ((y.array() <= 0.0).any()) continue;
        y /= y.sum();
        const double ry = max_residual(phi, y);
        if (ry < res) {
            x = y;
            res = ry;
            return true;
        }
    }
    return false;
}

inline Eigen::VectorXd stationary_vector(const Eigen::MatrixXd& P)
{
    const Eigen::Index n = P.rows();
    Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    A.row(n - 1).setOnes();
    b[n - 1] = 1.0;
    return A.fullPivLu().solve(b);
}

} // namespace detail

/// Fill q, R, P, the stationary vector and its aggregation by letter length from r.
inline void derive_quantities(HarmonicSolution& s)
{
    const ArtinIndex k = s.k;
    const SigmaAlphabet& alpha = s.alphabet;
    const auto n = static_cast<Eigen::Index>(alpha.size());
    std::array<double, 2> S{0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) S[static_cast<int>(first(alpha[static_cast<std::size_t>(i)]))] += s.r[i];

    s.q.resize(n);
    s.P = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const SigmaGen u = alpha[static_cast<std::size_t>(i)];
        const double next_mass = S[static_cast<int>(last(k, u))];
        s.q[i] = s.r[i] / next_mass;
        for (Eigen::Index j = 0; j < n; ++j)
            if (first(alpha[static_cast<std::size_t>(j)]) == last(k, u)) s.P(i, j) = s.r[j] / next_mass;
    }
    s.R.resize(static_cast<Eigen::Index>(alpha.t_size()));
    for (std::size_t t = 0; t < alpha.t_size(); ++t) {
        const TGen g = alpha.t_at(t);
        double v = s.r_of({g, false});
        if (k.odd()) v += s.r_of({g, true});
        s.R[static_cast<Eigen::Index>(t)] = v;
    }
    s.p_stat = detail::stationary_vector(s.P);
    s.p_agg.assign(static_cast<std::size_t>(k.value() - 1), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) s.p_agg[static_cast<std::size_t>(alpha[static_cast<std::size_t>(i)].t.len - 1)] += s.p_stat[i];
}

/**
 * Solve Phi(r) = r on the open simplex. Damped iteration x <- (1-l)x + l.Phi(x)
 * drives the iterate into the basin; Newton takes over once progress slows and
 * is abandoned for damped steps whenever its line search fails.
 */
inline HarmonicSolution solve_traffic(const StepMeasureQuotient& mu, const SolverOptions& opt = {})
{
    if (!(opt.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    mu.validate();
    check_irreducible(mu);
    const TrafficMap phi(mu);
    const auto n = static_cast<Eigen::Index>(phi.size());

    Eigen::VectorXd x = opt.start.size() == n ? opt.start : Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    if ((x.array() <= 0.0).any()) throw std::invalid_argument("solver start must be strictly positive");
    x /= x.sum();

    double res = detail::max_residual(phi, x);
    double checkpoint = res;
    bool newton = false;
    long it = 0;
    constexpr long window = 25;
    while (res > opt.tol) {
        if (it >= opt.max_iter) throw SolverError("traffic equations did not converge", res);
        ++it;
        if (newton) {
            if (detail::newton_step(phi, x, res)) continue;
            newton = false;
            checkpoint = res;
        }
        x = (1.0 - opt.damping) * x + opt.damping * phi(x);
        x /= x.sum();
        res = detail::max_residual(phi, x);
        if (it % window == 0) {
            if (res < 1e-4 || res > 0.5 * checkpoint) newton = true;
            checkpoint = res;
        }
    }
    if (!x.allFinite() || (x.array() <= 0.0).any()) throw SolverError("traffic solution left the open simplex", res);

    HarmonicSolution s{mu.k(), mu.alphabet(), x, {}, {}, {}, {}, {}, res, it};
    derive_quantities(s);
    return s;
}

namespace detail {

inline std::string fmt12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

/// Flat key-value text: r.<gen> lines in alphabet order, then residual and iterations.
inline std::string to_kv(const HarmonicSolution& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.alphabet.size(); ++i)
        out += "r." + text::format(s.alphabet[i]) + " = " + detail::fmt12(s.r[static_cast<Eigen::Index>(i)]) + "\n";
    for (std::size_t i = 0; i < s.p_agg.size(); ++i)
        out += "p_agg." + std::to_string(i + 1) + " = " + detail::fmt12(s.p_agg[i]) + "\n";
    out += "residual = " + detail::fmt12(s.residual) + "\n";
    out += "iterations = " + std::to_string(s.iterations) + "\n";
    return out;
}

} // namespace artinwalk
