#pragma once

/**
 * @file cylinders.hpp
 * @brief Cylinder masses of the two boundary measures built from a traffic solution.
 *
 * kappa lives on infinite geodesics over Sigma and is Markov-multiplicative:
 * kappa(v_1 ... v_m) = q(v_1) ... q(v_{m-1}) r(v_m). The harmonic measure mu
 * on infinite Garside words is its image under psi, so a Garside cylinder
 * collects the 2^{m-1} geodesic cylinders of its psi-preimage. The same sum is
 * produced by a four-state weighted automaton tracking (expected first letter,
 * Delta parity).
 */

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/geodesic.hpp"
#include "artinwalk/core/normal_form.hpp"
#include "artinwalk/harmonic/measure.hpp"
#include "artinwalk/harmonic/traffic.hpp"

namespace artinwalk {

/// kappa(v Sigma^N); the empty word has mass 1.
inline double kappa_cylinder(const HarmonicSolution& sol, const GeodesicWord& v)
{
    validate(sol.k, v);
    if (v.is_delta) throw NotGeodesicError("Delta is not a cylinder of infinite geodesics");
    if (v.letters.empty()) return 1.0;
    double out = sol.r_of(v.letters.back());
    for (std::size_t i = 0; i + 1 < v.letters.size(); ++i) out *= sol.q_of(v.letters[i]);
    return out;
}

/// mu(u T^N) summed over the psi-preimage; zero for words violating Garside adjacency.
inline double mu_cylinder(const HarmonicSolution& sol, std::span<const TGen> u)
{
    for (const TGen& t : u) check_tgen(sol.k, t);
    if (u.empty()) return 1.0;
    if (!tail_adjacent(u)) return 0.0;
    const GarsideQuotientWord w{{u.begin(), u.end()}, false};
    double total = 0.0;
    for (const GeodesicWord& v : psi_inverse(sol.k, w)) {
        double term = sol.R_of(v.letters.back().t);
        for (std::size_t i = 0; i + 1 < v.letters.size(); ++i) term *= sol.q_of(v.letters[i]);
        total += term;
    }
    return total;
}

/// Weighted automaton over T with alpha.M(u_1)...M(u_{m-1}).beta(u_m) = mu(u T^N).
struct HarmonicAutomaton {
    Eigen::RowVectorXd alpha;
    std::vector<Eigen::MatrixXd> M;    ///< indexed by SigmaAlphabet::t_index
    std::vector<Eigen::VectorXd> beta; ///< indexed by SigmaAlphabet::t_index
    SigmaAlphabet alphabet{ArtinIndex(3)};

    std::size_t states() const noexcept { return static_cast<std::size_t>(alpha.size()); }

    double eval(std::span<const TGen> u) const
    {
        if (u.empty()) return 1.0;
        Eigen::RowVectorXd v = alpha;
        for (std::size_t i = 0; i + 1 < u.size(); ++i) v = v * M[alphabet.t_index(u[i])];
        return v.dot(beta[alphabet.t_index(u.back())]);
    }
};

/**
 * States for k odd: 0 = (a, even), 1 = (b, odd), 2 = (b, even), 3 = (a, odd),
 * where the letter is the required First of the next geodesic letter and the
 * parity counts Delta-flags emitted so far. For k even the parity is always
 * even and only states 0 = a and 1 = b remain.
 */
inline HarmonicAutomaton harmonic_automaton(const HarmonicSolution& sol)
{
    const ArtinIndex k = sol.k;
    HarmonicAutomaton A;
    A.alphabet = sol.alphabet;
    const std::size_t nt = sol.alphabet.t_size();
    if (k.odd()) {
        auto state = [](Letter x, bool odd) -> Eigen::Index {
            if (x == Letter::a) return odd ? 3 : 0;
            return odd ? 1 : 2;
        };
        A.alpha = Eigen::RowVectorXd::Zero(4);
        A.alpha[0] = A.alpha[2] = 1.0;
        for (std::size_t ti = 0; ti < nt; ++ti) {
            const TGen u = sol.alphabet.t_at(ti);
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 4);
            Eigen::VectorXd beta = Eigen::VectorXd::Zero(4);
            for (bool parity : {false, true}) {
                const TGen t = parity ? bar(k, u) : u;
                const Eigen::Index from = state(t.first(), parity);
                beta[from] = sol.R_of(t);
                for (bool e : {false, true}) {
                    const SigmaGen v{t, e};
                    M(from, state(last(k, v), parity != e)) += sol.q_of(v);
                }
            }
            A.M.push_back(M);
            A.beta.push_back(beta);
        }
    } else {
        A.alpha = Eigen::RowVectorXd::Ones(2);
        for (std::size_t ti = 0; ti < nt; ++ti) {
            const TGen u = sol.alphabet.t_at(ti);
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2, 2);
            Eigen::VectorXd beta = Eigen::VectorXd::Zero(2);
            const auto f = static_cast<Eigen::Index>(u.first());
            M(f, static_cast<Eigen::Index>(u.last())) = sol.q_of({u, false});
            beta[f] = sol.R_of(u);
            A.M.push_back(M);
            A.beta.push_back(beta);
        }
    }
    return A;
}

/// Every geodesic over Sigma of the given length, in lexicographic alphabet order.
inline std::vector<std::vector<SigmaGen>> enumerate_geodesics(ArtinIndex k, std::size_t len)
{
    const SigmaAlphabet alpha(k);
    std::vector<std::vector<SigmaGen>> out;
    std::vector<SigmaGen> w;
    std::function<void()> rec = [&] {
        if (w.size() == len) {
            out.push_back(w);
            return;
        }
        for (const SigmaGen& v : alpha.gens()) {
            if (!w.empty() && last(k, w.back()) != first(v)) continue;
            w.push_back(v);
            rec();
            w.pop_back();
        }
    };
    rec();
    return out;
}

/**
 * max over geodesic cylinders c of depth 1..max_depth of
 * |kappa(c) - sum_v mu(v) kappa({xi : v (.) xi starts with c})|.
 * Left action by v changes at most one letter in front, so the preimage of a
 * depth-d cylinder is a union of depth-(d+1) cylinders.
 */
inline double kappa_stationarity_residual(const StepMeasureQuotient& mu, const HarmonicSolution& sol,
                                          std::size_t max_depth = 3)
{
    const ArtinIndex k = sol.k;
    const auto supp = mu.support();
    double worst = 0.0;
    for (std::size_t d = 1; d <= max_depth; ++d) {
        std::map<std::vector<SigmaGen>, double> pushed;
        for (const auto& c : enumerate_geodesics(k, d + 1)) {
            const double mass = kappa_cylinder(sol, GeodesicWord{c, false});
            for (const SigmaBar& v : supp) {
                std::deque<SigmaGen> w(c.begin(), c.end());
                bool is_delta = false;
                detail::geo_step_inplace(k, v, w, is_delta);
                std::vector<SigmaGen> prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
                pushed[prefix] += mu(v) * mass;
            }
        }
        for (const auto& c : enumerate_geodesics(k, d)) {
            const double lhs = kappa_cylinder(sol, GeodesicWord{c, false});
            const auto it = pushed.find(c);
            const double rhs = it == pushed.end() ? 0.0 : it->second;
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

} // namespace artinwalk
