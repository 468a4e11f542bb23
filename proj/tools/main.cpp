#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "tumor2d/config.hpp"
#include "tumor2d/diagnostics.hpp"
#include "tumor2d/io.hpp"
#include "tumor2d/stepper.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tumor2d;

namespace {

std::string default_outdir() {
    if (const char* env = std::getenv("TUMOR2D_OUTDIR")) return env;
    return "out";
}

bool source_free(const ModelParams& p) {
    return !p.growth_on && !p.supply_on && p.alpha == 0.0 && p.c_pi == 0.0 && p.f == 0.0;
}

struct RunResult {
    int steps_done = 0;
    int halvings_total = 0;
    bool bounds_ok = true;
    bool energy_ok = true;  // only meaningful for source-free configurations
    double final_energy = 0.0;
};

RunResult run_simulation(const RunConfig& cfg, const std::string& outdir,
                         bool write_files, bool check_energy) {
    const Grid g = cfg.make_grid();
    Stepper stepper(g, cfg.params);
    StepState s = stepper.initialize(make_initial_data(cfg));

    if (write_files) fs::create_directories(outdir);
    std::unique_ptr<EnergyWriter> ew;
    if (write_files) ew = std::make_unique<EnergyWriter>(outdir + "/energy.csv");

    RunResult res;
    StepState prev = s;
    for (int k = 1; k <= cfg.steps; ++k) {
        prev = s;
        const SubstepReports rep = stepper.advance(s);
        res.halvings_total += rep.halvings;
        if (!check_bounds(s, cfg.params)) res.bounds_ok = false;

        const EnergyCheck ec = check_energy_step(prev, s, cfg.params);
        if (check_energy && !ec.ok) res.energy_ok = false;
        if (ew) ew->row(s.k, s.t, energy(s, cfg.params), ec.diss, !check_energy || ec.ok);

        if (write_files && cfg.snapshot_every > 0 && k % cfg.snapshot_every == 0) {
            const std::string tag = std::to_string(k);
            write_cell_csv(outdir + "/cells_" + tag + ".csv", s);
            write_node_csv(outdir + "/nodes_" + tag + ".csv", s);
        }
        res.steps_done = k;
    }
    if (write_files) {
        write_cell_csv(outdir + "/cells_final.csv", s);
        write_node_csv(outdir + "/nodes_final.csv", s);
    }
    res.final_energy = energy(s, cfg.params).total();
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D tumour-growth solver: coupled phase field, nutrient, "
                 "viscoelasticity and damage"};
    app.require_subcommand(1);

    std::string config_path;
    std::string outdir = default_outdir();
    int levels = 4;
    double horizon = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file (key = value)")
            ->required();
    };

    CLI::App* cmd_run = app.add_subcommand("run", "advance the scheme and write snapshots");
    add_common(cmd_run);
    cmd_run->add_option("--outdir", outdir, "output directory (env TUMOR2D_OUTDIR)");

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "run and check bounds / dissipation, JSON verdict");
    add_common(cmd_verify);

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep-tau", "step-size refinement study on a tau ladder");
    add_common(cmd_sweep);
    cmd_sweep->add_option("--levels", levels, "number of tau levels (halving)")
        ->check(CLI::Range(2, 8));
    cmd_sweep->add_option("--T", horizon, "time horizon (default steps*tau)");

    CLI::App* cmd_energy =
        app.add_subcommand("energy", "run and write the per-step energy ledger");
    add_common(cmd_energy);
    cmd_energy->add_option("--outdir", outdir, "output directory (env TUMOR2D_OUTDIR)");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = load_config(config_path);

        if (cmd_run->parsed()) {
            const RunResult r = run_simulation(cfg, outdir, true, source_free(cfg.params));
            std::cout << "steps: " << r.steps_done << "\nhalvings: " << r.halvings_total
                      << "\nbounds: " << (r.bounds_ok ? "ok" : "VIOLATION")
                      << "\nfinal energy: " << r.final_energy << "\noutput: " << outdir
                      << "\n";
            return r.bounds_ok ? 0 : 1;
        }

        if (cmd_verify->parsed()) {
            const bool sf = source_free(cfg.params);
            const RunResult r = run_simulation(cfg, "", false, sf);
            json out = {{"steps", r.steps_done},
                        {"halvings", r.halvings_total},
                        {"bounds_ok", r.bounds_ok},
                        {"source_free", sf},
                        {"energy_checked", sf},
                        {"energy_ok", sf ? json(r.energy_ok) : json(nullptr)},
                        {"final_energy", r.final_energy}};
            const bool ok = r.bounds_ok && (!sf || r.energy_ok);
            out["verdict"] = ok ? "pass" : "fail";
            std::cout << out.dump(2) << "\n";
            return ok ? 0 : 1;
        }

        if (cmd_sweep->parsed()) {
            const Grid g = cfg.make_grid();
            std::vector<double> taus;
            double tau = cfg.params.tau;
            for (int l = 0; l < levels; ++l, tau *= 0.5) taus.push_back(tau);
            const double T = horizon > 0.0 ? horizon : cfg.steps * cfg.params.tau;
            const TauStudyResult res =
                tau_refinement(g, cfg.params, make_initial_data(cfg), T, taus);
            json out;
            out["T"] = T;
            out["taus"] = res.taus;
            out["phi_l2l2_distances"] = res.distances;
            bool decreasing = true;
            for (size_t i = 0; i + 1 < res.distances.size(); ++i)
                if (!(res.distances[i + 1] < res.distances[i])) decreasing = false;
            out["distances_decreasing"] = decreasing;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (cmd_energy->parsed()) {
            const RunResult r = run_simulation(cfg, outdir, true, source_free(cfg.params));
            std::cout << "energy ledger: " << outdir << "/energy.csv\n"
                      << "final energy: " << r.final_energy << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        json err = {{"verdict", "error"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 0;
}
