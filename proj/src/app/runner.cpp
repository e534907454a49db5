// runner.cpp

#include "omspec/app/runner.hpp"

#include <filesystem>
#include <ostream>

#include "omspec/app/output.hpp"
#include "omspec/dressed.hpp"
#include "omspec/propagator.hpp"

namespace omspec::app {

namespace {

std::string path_in(const RunConfig& c, const std::string& file) {
    return (std::filesystem::path(c.out_dir) / file).string();
}

void write_meta(const RunConfig& c, const std::string& command, const std::vector<std::string>& warnings) {
    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["config"] = to_json(c);
    nlohmann::ordered_json diags = nlohmann::ordered_json::array();
    for (const Diagnostic& d : validate(c.params)) diags.push_back({{"code", d.code}, {"message", d.message}});
    meta["diagnostics"] = diags;
    meta["warnings"] = warnings;
    write_file_atomic(path_in(c, "meta.json"), dump(meta));
}

void do_evolve(const RunConfig& c, std::ostream& log) {
    const PropagatorCache cache = decompose(build_h_dnh(c.params));
    const PureState psi0 = make_initial_state(c.initial, c.params);
    std::vector<double> grid;
    const int n = c.evolve_points;
    for (int i = 0; i < n; ++i) grid.push_back(n == 1 ? 0.0 : c.evolve_tmax * i / (n - 1));
    const CMatrix amps = amplitude_series(cache, psi0, grid);
    write_file_atomic(path_in(c, "amplitudes.csv"), amplitudes_csv(grid, amps, c.params.m_max));
    log << "amplitudes.csv: " << grid.size() << " times x " << amps.cols() << " amplitudes\n";
}

std::vector<std::string> do_spectrum(const RunConfig& c, std::ostream& log) {
    const FilterSpec filter = c.filter();
    SpectrumResult r;
    if (c.thermal) {
        r = thermal_spectrum(c.params, filter, c.times, c.mode, c.backend, c.options);
    } else {
        r = compute_spectrum(c.params, make_initial_state(c.initial, c.params), filter, c.times, c.mode, c.backend,
                             c.options);
    }
    write_file_atomic(path_in(c, "spectrum.csv"), spectrum_csv(r));
    const auto peaks = peaks_json(r, c.peak_prominence);
    write_file_atomic(path_in(c, "peaks.json"), dump(peaks));
    if (c.svg) write_file_atomic(path_in(c, "plot.svg"), spectrum_svg(r));
    for (const auto& s : peaks["spectra"]) {
        log << "t=" << s["t"].get<double>() << ": " << s["peaks"].size() << " peaks\n";
    }
    return r.warnings;
}

void do_dressed(const RunConfig& c, std::ostream& log) {
    const DressedSystem d = diagonalize_truncated(c.params, c.params.m_max);
    const TransitionTable table = transition_table(d, make_initial_state(c.initial, c.params));
    write_file_atomic(path_in(c, "dressed.json"), dump(dressed_json(d, table, c.params)));
    log << "levels:";
    for (double e : d.levels) log << ' ' << format_number(rounded(e));
    log << '\n';
}

void do_ledger(const RunConfig& c, std::ostream& log) {
    const PropagatorCache cache = decompose(build_h_dnh(c.params));
    const FluxLedger led =
        flux_ledger(cache, make_initial_state(c.initial, c.params), c.params, c.ledger_tmax, c.ledger_steps);
    write_file_atomic(path_in(c, "ledger.json"), dump(ledger_json(led)));
    const std::size_t last = led.times.size() - 1;
    log << "detected_photon=" << format_number(led.detected_photon[last])
        << " norm_squared=" << format_number(led.norm_squared[last])
        << " balance_residual=" << format_number(led.balance_residual)
        << " truncation_leak=" << format_number(led.truncation_leak) << '\n';
}

}  // namespace

void execute(Command command, const RunConfig& c, std::ostream& log) {
    check(c);
    std::filesystem::create_directories(c.out_dir);
    std::vector<std::string> warnings;
    switch (command) {
    case Command::Evolve:
        do_evolve(c, log);
        write_meta(c, "evolve", warnings);
        break;
    case Command::Spectrum:
        warnings = do_spectrum(c, log);
        write_meta(c, "spectrum", warnings);
        break;
    case Command::Dressed:
        do_dressed(c, log);
        write_meta(c, "dressed", warnings);
        break;
    case Command::Ledger:
        do_ledger(c, log);
        write_meta(c, "ledger", warnings);
        break;
    case Command::Run:
        warnings = do_spectrum(c, log);
        do_dressed(c, log);
        do_ledger(c, log);
        write_meta(c, "run", warnings);
        break;
    }
}

int run(Command command, const RunConfig& c, std::ostream& log, std::ostream& err) {
    try {
        execute(command, c, log);
        return 0;
    } catch (const ConfigError& e) {
        err << dump({{"error", {{"code", e.code()}, {"message", e.what()}}}});
        return 2;
    } catch (const Error& e) {
        const auto report = dump({{"error", {{"code", e.code()}, {"message", e.what()}}}});
        err << report;
        try {
            write_file_atomic(path_in(c, "error.json"), report);
        } catch (...) {
        }
        return 1;
    } catch (const std::exception& e) {
        const auto report = dump({{"error", {{"code", "internal"}, {"message", e.what()}}}});
        err << report;
        return 1;
    }
}

}  // namespace omspec::app
