// omspec - command-line front end for the hybrid atom-optomechanical spectrum simulator

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "omspec/app/config.hpp"
#include "omspec/app/runner.hpp"

namespace {

using omspec::app::Command;
using omspec::app::RunConfig;

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> preset;
    std::vector<double> times;
    std::optional<double> delta_min, delta_max;
    std::optional<int> delta_points;
    std::optional<std::string> mode, backend;
    std::optional<int> mmax;
    std::optional<std::string> out;
    bool svg{false};
    std::optional<double> ga, gm, kappa, gamma_a, gamma_m, mbar, delta_a, filter_gamma;
    bool thermal{false};
    bool mbar_terms{false};
    std::optional<std::string> initial_branch;
    std::optional<int> initial_phonons;
    std::optional<double> tmax;
    std::optional<int> steps, points, outer_steps;
    std::optional<double> quadrature_step, prominence;
    std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON configuration file");
    cmd->add_option("--preset", f.preset, "built-in parameter set (see `presets`)");
    cmd->add_option("--time", f.times, "observation time; repeatable");
    cmd->add_option("--delta-min", f.delta_min, "lowest filter detuning");
    cmd->add_option("--delta-max", f.delta_max, "highest filter detuning");
    cmd->add_option("--delta-points", f.delta_points, "number of filter detunings");
    cmd->add_option("--mode", f.mode, "incoherent|coherent");
    cmd->add_option("--backend", f.backend, "closed|quadrature");
    cmd->add_option("--mmax", f.mmax, "phonon cutoff");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_flag("--svg", f.svg, "also write plot.svg");
    cmd->add_option("--ga", f.ga, "atom-cavity coupling");
    cmd->add_option("--gm", f.gm, "optomechanical coupling");
    cmd->add_option("--kappa", f.kappa, "cavity leak rate");
    cmd->add_option("--gamma-a", f.gamma_a, "spontaneous emission rate");
    cmd->add_option("--gamma-m", f.gamma_m, "mechanical damping rate");
    cmd->add_option("--mbar", f.mbar, "mean bath phonon number");
    cmd->add_option("--delta-a", f.delta_a, "atom-cavity detuning");
    cmd->add_option("--filter-gamma", f.filter_gamma, "filter bandwidth");
    cmd->add_flag("--thermal", f.thermal, "average over a thermal initial mirror state");
    cmd->add_flag("--mbar-terms", f.mbar_terms, "keep the mbar terms of the finite-temperature generator");
    cmd->add_option("--initial-branch", f.initial_branch, "atom_excited|photon_in_cavity");
    cmd->add_option("--initial-phonons", f.initial_phonons, "initial phonon number");
    cmd->add_option("--tmax", f.tmax, "ledger/evolve horizon");
    cmd->add_option("--steps", f.steps, "ledger Simpson intervals");
    cmd->add_option("--points", f.points, "evolve sample count");
    cmd->add_option("--outer-steps", f.outer_steps, "Simpson intervals of the outer spectrum integral");
    cmd->add_option("--quadrature-step", f.quadrature_step, "largest inner step of the quadrature backend");
    cmd->add_option("--prominence", f.prominence, "peak prominence fraction");
    cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

RunConfig resolve(const Flags& f, Command command) {
    RunConfig c;
    if (f.preset) c = omspec::app::preset(*f.preset);
    if (f.config) c = omspec::app::load_config_file(*f.config, c);
    if (!f.times.empty()) c.times = f.times;
    if (f.delta_min) c.grid.delta_min = *f.delta_min;
    if (f.delta_max) c.grid.delta_max = *f.delta_max;
    if (f.delta_points) c.grid.delta_points = *f.delta_points;
    if (f.mode) c.mode = omspec::app::parse_mode(*f.mode);
    if (f.backend) c.backend = omspec::app::parse_backend(*f.backend);
    if (f.mmax) c.params.m_max = *f.mmax;
    if (f.out) c.out_dir = *f.out;
    if (f.svg) c.svg = true;
    if (f.ga) c.params.g_a = *f.ga;
    if (f.gm) c.params.g_m = *f.gm;
    if (f.kappa) c.params.kappa = *f.kappa;
    if (f.gamma_a) c.params.gamma_a = *f.gamma_a;
    if (f.gamma_m) c.params.gamma_m = *f.gamma_m;
    if (f.mbar) c.params.mbar = *f.mbar;
    if (f.delta_a) c.params.delta_a = *f.delta_a;
    if (f.filter_gamma) c.filter_gamma = *f.filter_gamma;
    if (f.thermal) c.thermal = true;
    if (f.mbar_terms) c.params.include_mbar_terms = true;
    if (f.initial_branch) {
        if (*f.initial_branch == "atom_excited") {
            c.initial.branch = omspec::Branch::AtomExcited;
        } else if (*f.initial_branch == "photon_in_cavity") {
            c.initial.branch = omspec::Branch::PhotonInCavity;
        } else {
            throw omspec::app::ConfigError("--initial-branch must be atom_excited or photon_in_cavity");
        }
    }
    if (f.initial_phonons) c.initial.phonons = *f.initial_phonons;
    if (f.tmax) (command == Command::Evolve ? c.evolve_tmax : c.ledger_tmax) = *f.tmax;
    if (f.steps) c.ledger_steps = *f.steps;
    if (f.points) c.evolve_points = *f.points;
    if (f.outer_steps) c.options.outer_steps = *f.outer_steps;
    if (f.quadrature_step) c.options.quadrature_step = *f.quadrature_step;
    if (f.prominence) c.peak_prominence = *f.prominence;
    if (f.threads) c.options.threads = *f.threads;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real-time single-photon spectrum of a two-level atom in an optomechanical cavity"};
    app.require_subcommand(1);
    Flags flags;

    struct Sub {
        CLI::App* app;
        Command command;
    };
    std::vector<Sub> subs = {
        {app.add_subcommand("evolve", "no-jump amplitude time series -> amplitudes.csv"), Command::Evolve},
        {app.add_subcommand("spectrum", "time-dependent spectrum -> spectrum.csv, peaks.json"), Command::Spectrum},
        {app.add_subcommand("dressed", "dressed levels and transition table -> dressed.json"), Command::Dressed},
        {app.add_subcommand("ledger", "norm and loss-channel bookkeeping -> ledger.json"), Command::Ledger},
        {app.add_subcommand("run", "spectrum, dressed and ledger in one go"), Command::Run},
    };
    for (auto& s : subs) add_common(s.app, flags);
    CLI::App* presets = app.add_subcommand("presets", "list built-in parameter sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    if (presets->parsed()) {
        for (const auto& p : omspec::app::list_presets()) std::cout << p.name << "\t" << p.description << "\n";
        return 0;
    }
    for (const auto& s : subs) {
        if (!s.app->parsed()) continue;
        RunConfig config;
        try {
            config = resolve(flags, s.command);
        } catch (const omspec::app::ConfigError& e) {
            const nlohmann::json report = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
            std::cerr << report.dump(2) << "\n\n" << s.app->help();
            return 2;
        }
        return omspec::app::run(s.command, config, std::cout, std::cerr);
    }
    return 2;
}
