// artinwalk: drifts, surface sweeps, simulation and validation from the command line.
//
// Exit codes: 0 ok, 1 check failure, 2 input error, 3 solver failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "artinwalk/artinwalk.hpp"

namespace aw = artinwalk;

namespace {

enum Exit : int { ok = 0, check_failure = 1, input_error = 2, solver_failure = 3 };

struct MeasureFlags {
    int k = 3;
    std::string spec_file;
    bool uniform = false;
    std::optional<double> p, q;
    double tol = 1e-12;
};

void add_measure_flags(CLI::App& cmd, MeasureFlags& f)
{
    cmd.add_option("--k", f.k, "Artin index k >= 3")->check(CLI::Range(3, 1'000'000));
    cmd.add_option("--spec", f.spec_file, "measure file: lines '<gen> <delta-exp> <prob>'");
    cmd.add_flag("--uniform-artin", f.uniform, "1/4 on each of a, b, a^-1, b^-1");
    cmd.add_option("--p", f.p, "nu(a) = p, nu(b^-1) = 1/2 - p");
    cmd.add_option("--q", f.q, "nu(b) = q, nu(a^-1) = 1/2 - q");
    cmd.add_option("--tol", f.tol, "solver tolerance")->check(CLI::PositiveNumber);
}

aw::StepMeasureFull build_measure(const MeasureFlags& f)
{
    const aw::ArtinIndex k(f.k);
    const int chosen = (f.spec_file.empty() ? 0 : 1) + (f.uniform ? 1 : 0) + ((f.p || f.q) ? 1 : 0);
    if (chosen != 1) throw aw::ParseError("give exactly one of --spec, --uniform-artin, or --p with --q");
    if (f.uniform) return aw::uniform_artin(k);
    if (f.p || f.q) {
        if (!f.p || !f.q) throw aw::ParseError("--p and --q must be given together");
        return aw::pq_measure(k, *f.p, *f.q);
    }
    std::ifstream in(f.spec_file);
    if (!in) throw aw::ParseError("cannot open spec file '" + f.spec_file + "'");
    return aw::to_measure(aw::parse_measure_spec(k, in));
}

aw::DriftOptions drift_options(const MeasureFlags& f)
{
    aw::DriftOptions opt;
    opt.solver.tol = f.tol;
    return opt;
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw aw::ParseError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_drift(const MeasureFlags& f, const std::string& format, const std::string& out_path)
{
    const aw::StepMeasureFull nu = build_measure(f);
    const aw::DriftResult res = aw::compute_drifts(nu, drift_options(f));
    Output out(out_path);
    if (format == "csv") {
        out.stream() << aw::drift_csv_header() << "\n" << aw::to_csv_row(res.report) << "\n";
    } else {
        out.stream() << aw::to_kv(res.report) << aw::to_kv(res.solution);
    }
    return ok;
}

int cmd_sweep(int k, int grid, double tol, const std::string& out_path)
{
    if (grid < 2) throw aw::ParseError("--grid must be >= 2");
    aw::DriftOptions opt;
    opt.solver.tol = tol;
    Output out(out_path);
    out.stream() << "p,q,gamma,gamma_sigma,gamma_splus,gamma_delta,branch\n";
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double p = aw::validation::grid_point(i, grid);
            const double q = aw::validation::grid_point(j, grid);
            if (!(p > 0.0 && p < 0.5 && q > 0.0 && q < 0.5)) {
                std::cerr << "warning: skipping boundary point p=" << p << " q=" << q << "\n";
                continue;
            }
            const aw::DriftReport r = aw::compute_drifts(aw::pq_measure(aw::ArtinIndex(k), p, q), opt).report;
            out.stream() << aw::detail::fmt12(p) << "," << aw::detail::fmt12(q) << "," << aw::detail::fmt12(r.gamma)
                         << "," << aw::detail::fmt12(r.gamma_sigma) << "," << aw::detail::fmt12(r.gamma_splus) << ","
                         << aw::detail::fmt12(r.gamma_delta) << "," << r.branch << "\n";
        }
    }
    return ok;
}

int cmd_simulate(const MeasureFlags& f, std::uint64_t steps, std::size_t replicas, std::uint64_t seed,
                 const std::string& format, const std::string& out_path)
{
    if (steps == 0) throw aw::ParseError("--steps must be >= 1");
    const aw::StepMeasureFull nu = build_measure(f);
    const aw::EstimateReport rep = aw::estimate_drifts(nu, steps, replicas, seed);
    Output out(out_path);
    out.stream() << (format == "csv" ? aw::to_csv(rep) : aw::to_kv(rep));
    return ok;
}

int cmd_validate(bool quick, bool simple_only, bool oracle, std::optional<int> k, int radius)
{
    std::vector<aw::validation::CriterionResult> results;
    if (simple_only) results.push_back(aw::validation::criterion_simple_walk());
    if (oracle) {
        std::vector<int> ks{3, 4, 5};
        if (k) ks = {*k};
        results.push_back(aw::validation::criterion_oracle(ks, radius));
    }
    if (!simple_only && !oracle) results = aw::validation::run_all(quick);
    bool all = true;
    for (const auto& r : results) {
        std::cout << aw::validation::format_line(r) << "\n";
        all = all && r.passed;
    }
    return all ? ok : check_failure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Random walks on dihedral Artin groups: drifts, harmonic measure, simulation"};
    app.require_subcommand(1);

    MeasureFlags mf;
    std::string format = "kv";
    std::string out_path;

    auto* drift = app.add_subcommand("drift", "solve the traffic equations and print the four drifts");
    add_measure_flags(*drift, mf);
    drift->add_option("--format", format)->check(CLI::IsMember({"kv", "csv"}));
    drift->add_option("--out", out_path, "write to FILE instead of stdout");

    int sweep_k = 3, grid = 40;
    double sweep_tol = 1e-12;
    auto* sweep = app.add_subcommand("sweep", "gamma over a cell-centred (p, q) grid as CSV");
    sweep->add_option("--k", sweep_k)->check(CLI::Range(3, 1'000'000));
    sweep->add_option("--grid", grid, "cells per axis");
    sweep->add_option("--tol", sweep_tol)->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_path);

    std::uint64_t steps = 100'000, seed = 1;
    std::size_t replicas = 50;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo drift estimates");
    add_measure_flags(*sim, mf);
    sim->add_option("--steps", steps);
    sim->add_option("--replicas", replicas)->check(CLI::Range(std::size_t{2}, std::size_t{1'000'000}));
    sim->add_option("--seed", seed);
    sim->add_option("--format", format)->check(CLI::IsMember({"kv", "csv"}));
    sim->add_option("--out", out_path);

    bool quick = false, simple_only = false, oracle = false;
    std::optional<int> vk;
    int radius = 8;
    auto* val = app.add_subcommand("validate", "run the acceptance checks");
    val->add_flag("--quick", quick, "skip Monte Carlo");
    val->add_flag("--table2", simple_only, "only the simple-walk regression");
    val->add_flag("--oracle", oracle, "only the BFS length comparison");
    val->add_option("--k", vk, "k for --oracle")->check(CLI::Range(3, 64));
    val->add_option("--radius", radius, "ball radius for --oracle")->check(CLI::Range(0, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        if (*drift) return cmd_drift(mf, format, out_path);
        if (*sweep) return cmd_sweep(sweep_k, grid, sweep_tol, out_path);
        if (*sim) return cmd_simulate(mf, steps, replicas, seed, format, out_path);
        if (*val) return cmd_validate(quick, simple_only, oracle, vk, radius);
    } catch (const aw::SolverError& e) {
        std::cerr << "error: solver failed: " << e.what() << " (residual " << e.residual() << ")\n";
        return solver_failure;
    } catch (const aw::ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return check_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return solver_failure;
    }
    return ok;
}
