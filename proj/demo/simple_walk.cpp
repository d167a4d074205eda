// Simple random walk on A_k for k = 3..8: analytic drifts next to a short simulation.

#include <cstdio>

#include "artinwalk/artinwalk.hpp"

int main()
{
    using namespace artinwalk;
    std::printf("%-3s %-14s %-14s %-14s %-14s %-22s\n", "k", "gamma", "gamma_sigma", "gamma_delta", "closed form",
                "two-scale MC (20 x 2e4)");
    for (int kv = 3; kv <= 8; ++kv) {
        const ArtinIndex k(kv);
        const StepMeasureFull nu = uniform_artin(k);
        const DriftReport d = compute_drifts(nu).report;
        const DriftReport c = simple_walk_closed_form(kv);
        const EstimateReport e = estimate_drifts(nu, 20'000, 20, 1);
        std::printf("%-3d %-14.10f %-14.10f %-14.10f %-14.10f %.4f +- %.4f\n", kv, d.gamma, d.gamma_sigma,
                    d.gamma_delta, c.gamma, e.est_gamma_debiased.mean, e.est_gamma_debiased.se);
    }

    // A walk whose boundary letters can be read off directly.
    const StepMeasureQuotient mu = project(uniform_artin(ArtinIndex(3)));
    const GeodesicWord z = backward_walk(mu, 40, 7);
    std::printf("\nbackward word Z_40 (k=3): %s\n", text::format(z).c_str());
    std::printf("its Garside form psi(Z_40): %s\n", text::format(psi(ArtinIndex(3), z)).c_str());
    return 0;
}
