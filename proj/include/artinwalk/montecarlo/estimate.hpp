#pragma once

/**
 * @file estimate.hpp
 * @brief Replica-based Monte Carlo estimates of the drifts and of boundary cylinder masses.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "artinwalk/core/text.hpp"
#include "artinwalk/harmonic/traffic.hpp"
#include "artinwalk/montecarlo/walk.hpp"

namespace artinwalk {

struct ReplicaStats {
    double mean = 0.0;
    double se = 0.0; ///< sample standard deviation of replica values / sqrt(R)
};

inline ReplicaStats replica_stats(const std::vector<double>& xs)
{
    if (xs.size() < 2) throw std::invalid_argument("need at least two replicas");
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    v /= n - 1.0;
    return {m, std::sqrt(v / n)};
}

struct EstimateReport {
    std::uint64_t seed = 0;
    std::uint64_t n_steps = 0;
    std::size_t replicas = 0;
    // Per-replica values, indexed by replica.
    std::vector<double> gamma, gamma_sigma, gamma_splus, gamma_delta, gamma_debiased;
    ReplicaStats est_gamma, est_gamma_sigma, est_gamma_splus, est_gamma_delta;
    /**
     * 2(|X_n| - 2|X_{n/4}|)/n. When the mean increments sit on a kink of the
     * piecewise-linear length formula, E|X_n| = n.gamma + c.sqrt(n) + o(sqrt(n))
     * and |X_n|/n carries a bias of the same order as its standard error; this
     * combination cancels the sqrt(n) term.
     */
    ReplicaStats est_gamma_debiased;
};

inline EstimateReport estimate_drifts(const StepMeasureFull& nu, std::uint64_t n_steps, std::size_t replicas,
                                      std::uint64_t seed)
{
    if (replicas < 2) throw std::invalid_argument("replicas must be >= 2");
    EstimateReport rep;
    rep.seed = seed;
    rep.n_steps = n_steps;
    rep.replicas = replicas;
    const double n = static_cast<double>(n_steps);
    for (std::size_t r = 0; r < replicas; ++r) {
        const WalkTrajectoryStats s = run_walk(nu, n_steps, replica_seed(seed, r));
        rep.gamma.push_back(static_cast<double>(s.word_length) / n);
        rep.gamma_sigma.push_back(static_cast<double>(s.sigma_length) / n);
        rep.gamma_splus.push_back(static_cast<double>(s.splus) / n);
        rep.gamma_delta.push_back(static_cast<double>(s.delta_exp) / n);
        const double quarter = static_cast<double>(n_steps / 4);
        rep.gamma_debiased.push_back(static_cast<double>(s.word_length - 2 * s.word_length_quarter) / (n - 2.0 * quarter));
    }
    rep.est_gamma = replica_stats(rep.gamma);
    rep.est_gamma_sigma = replica_stats(rep.gamma_sigma);
    rep.est_gamma_splus = replica_stats(rep.gamma_splus);
    rep.est_gamma_delta = replica_stats(rep.gamma_delta);
    rep.est_gamma_debiased = replica_stats(rep.gamma_debiased);
    return rep;
}

/// Replica means of (1/n) sum theta_Delta along the left walk.
inline ReplicaStats estimate_theta_delta(const StepMeasureFull& nu, std::uint64_t n_steps, std::size_t replicas,
                                         std::uint64_t seed)
{
    const StepSampler sample(nu);
    std::vector<double> means;
    for (std::size_t r = 0; r < replicas; ++r) {
        Rng rng(replica_seed(seed, r));
        LeftWalk w(nu.k());
        std::int64_t sum = 0;
        for (std::uint64_t m = 0; m < n_steps; ++m) sum += w.left_multiply(sample(rng));
        means.push_back(static_cast<double>(sum) / static_cast<double>(n_steps));
    }
    return replica_stats(means);
}

inline std::string to_csv(const EstimateReport& r)
{
    std::string out = "row,gamma,gamma_sigma,gamma_splus,gamma_delta,se_gamma,se_gamma_sigma,se_gamma_splus,se_gamma_delta\n";
    for (std::size_t i = 0; i < r.replicas; ++i)
        out += std::to_string(i) + "," + detail::fmt12(r.gamma[i]) + "," + detail::fmt12(r.gamma_sigma[i]) + "," +
               detail::fmt12(r.gamma_splus[i]) + "," + detail::fmt12(r.gamma_delta[i]) + ",,,,\n";
    out += "summary," + detail::fmt12(r.est_gamma.mean) + "," + detail::fmt12(r.est_gamma_sigma.mean) + "," +
           detail::fmt12(r.est_gamma_splus.mean) + "," + detail::fmt12(r.est_gamma_delta.mean) + "," +
           detail::fmt12(r.est_gamma.se) + "," + detail::fmt12(r.est_gamma_sigma.se) + "," +
           detail::fmt12(r.est_gamma_splus.se) + "," + detail::fmt12(r.est_gamma_delta.se) + "\n";
    return out;
}

inline std::string to_kv(const EstimateReport& r)
{
    std::string out;
    out += "seed = " + std::to_string(r.seed) + "\n";
    out += "steps = " + std::to_string(r.n_steps) + "\n";
    out += "replicas = " + std::to_string(r.replicas) + "\n";
    auto line = [&](const char* name, const ReplicaStats& s) {
        out += std::string(name) + " = " + detail::fmt12(s.mean) + "\n";
        out += std::string(name) + ".se = " + detail::fmt12(s.se) + "\n";
    };
    line("gamma", r.est_gamma);
    line("gamma_sigma", r.est_gamma_sigma);
    line("gamma_splus", r.est_gamma_splus);
    line("gamma_delta", r.est_gamma_delta);
    line("gamma_debiased", r.est_gamma_debiased);
    return out;
}

struct CylinderFrequency {
    std::size_t count = 0;
    double freq = 0.0;
    double se = 0.0; ///< binomial sqrt(f(1-f)/used)
};

struct EmpiricalHarmonic {
    std::size_t depth = 0;
    std::size_t used_y = 0, excluded_y = 0;
    std::size_t used_z = 0, excluded_z = 0;
    std::map<std::vector<TGen>, CylinderFrequency> mu;       ///< prefixes of Y_n
    std::map<std::vector<SigmaGen>, CylinderFrequency> kappa; ///< prefixes of Z_n
};

/**
 * Depth-d prefixes of Y_n (forward) and Z_n (backward) from the same driving
 * sequence. A step changes only the last letter of Y, so Y's depth-d prefix is
 * fixed over the last ceil(n/2) steps iff |Y_m| >= d + 1 there. Consecutive Z
 * differ by prefix distance <= 2 and |Z_m| = |Y_m|, so |Y_m| >= d + 2 over the
 * same window fixes Z's depth-d prefix. Replicas failing a test are excluded
 * from that estimate and counted.
 */
inline EmpiricalHarmonic empirical_harmonic(const StepMeasureQuotient& mu, std::size_t depth, std::uint64_t n_steps,
                                            std::size_t replicas, std::uint64_t seed)
{
    if (depth == 0 || depth > 4) throw std::invalid_argument("depth must lie in 1..4");
    if (n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");
    const ArtinIndex k = mu.k();
    EmpiricalHarmonic out;
    out.depth = depth;
    const std::uint64_t half_start = n_steps - (n_steps + 1) / 2;
    for (std::size_t r = 0; r < replicas; ++r) {
        Rng rng(replica_seed(seed, r));
        const auto seq = sample_quotient_steps(mu, n_steps, rng);
        GarsideQuotientWord y;
        std::size_t min_len = SIZE_MAX;
        for (std::uint64_t m = 0; m < n_steps; ++m) {
            y = nf_mult_gen(k, std::move(y), seq[m]);
            if (m + 1 >= half_start) min_len = std::min(min_len, y.sigma_length());
        }
        if (min_len >= depth + 1 && y.letters.size() >= depth) {
            ++out.used_y;
            ++out.mu[{y.letters.begin(), y.letters.begin() + static_cast<std::ptrdiff_t>(depth)}].count;
        } else {
            ++out.excluded_y;
        }
        if (min_len >= depth + 2) {
            const GeodesicWord z = backward_fold(k, seq);
            ++out.used_z;
            ++out.kappa[{z.letters.begin(), z.letters.begin() + static_cast<std::ptrdiff_t>(depth)}].count;
        } else {
            ++out.excluded_z;
        }
    }
    auto finish = [](auto& table, std::size_t used) {
        for (auto& [key, c] : table) {
            c.freq = static_cast<double>(c.count) / static_cast<double>(used);
            c.se = std::sqrt(c.freq * (1.0 - c.freq) / static_cast<double>(used));
        }
    };
    finish(out.mu, out.used_y);
    finish(out.kappa, out.used_z);
    return out;
}

} // namespace artinwalk
