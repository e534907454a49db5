#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "omspec/app/config.hpp"
#include "omspec/app/output.hpp"
#include "omspec/app/runner.hpp"

using namespace omspec;
using namespace omspec::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("omspec_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("presets carry the published parameter sets") {
    const RunConfig f2 = preset("fig2");
    CHECK(f2.params.g_a == 4.0);
    CHECK(f2.params.g_m == 1.2);
    CHECK(f2.params.kappa == 0.5);
    CHECK(f2.filter_gamma == 0.1);
    CHECK(f2.params.gamma_a == 0.0);
    CHECK(f2.params.gamma_m == 0.0);
    CHECK(f2.times == std::vector<double>{1, 2, 4, 7, 10, 20});
    CHECK_FALSE(f2.thermal);

    const RunConfig f5 = preset("fig5");
    CHECK(f5.params.gamma_m == 0.1);
    CHECK(f5.params.gamma_a == 0.4);
    CHECK(f5.params.mbar == 0.1);
    CHECK(f5.thermal);
    CHECK(f5.times == f2.times);

    const RunConfig f4 = preset("fig4");
    CHECK(f4.params.m_max == 1);
    CHECK(f4.times == std::vector<double>{20});

    CHECK(list_presets().size() == 3);
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
}

TEST_CASE("JSON configuration") {
    const auto doc = nlohmann::json::parse(R"({
        "preset": "fig4",
        "params": {"g_m": 0.5},
        "filter": {"gamma": 0.2, "delta_points": 11},
        "times": [3, 5],
        "mode": "coherent",
        "backend": "quadrature"
    })");
    const RunConfig c = apply_json({}, doc);
    CHECK(c.params.m_max == 1);
    CHECK(c.params.g_m == 0.5);
    CHECK(c.filter_gamma == 0.2);
    CHECK(c.grid.delta_points == 11);
    CHECK(c.filter().delta_grid.size() == 11);
    CHECK(c.times == std::vector<double>{3, 5});
    CHECK(c.mode == SpectrumMode::CoherentAsPrinted);
    CHECK(c.backend == Backend::Quadrature);

    CHECK_THROWS_AS(apply_json({}, nlohmann::json::parse(R"({"bogus": 1})")), ConfigError);
    CHECK_THROWS_AS(apply_json({}, nlohmann::json::parse(R"({"params": {"g_x": 1}})")), ConfigError);
    CHECK_THROWS_AS(apply_json({}, nlohmann::json::parse(R"({"mode": 3})")), ConfigError);
    CHECK_THROWS_AS(apply_json({}, nlohmann::json::parse(R"({"mode": "sideways"})")), ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/omspec.json"), ConfigError);

    RunConfig bad;
    bad.times = {-1.0};
    CHECK_THROWS_AS(check(bad), ConfigError);
    bad = RunConfig{};
    bad.grid.delta_points = 0;
    CHECK_THROWS_AS(check(bad), ConfigError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(rounded(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("spectrum command writes the documented artifacts") {
    RunConfig c = preset("fig2");
    c.times = {20.0};
    c.svg = true;
    c.out_dir = scratch("spectrum").string();
    std::ostringstream log;
    execute(Command::Spectrum, c, log);
    const fs::path dir(c.out_dir);
    const std::string csv = slurp(dir / "spectrum.csv");
    CHECK(csv.rfind("t,delta,N\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 802);
    CHECK(csv.find("\n20,-8,") != std::string::npos);
    CHECK(fs::exists(dir / "peaks.json"));
    CHECK(fs::exists(dir / "plot.svg"));
    const auto meta = nlohmann::json::parse(slurp(dir / "meta.json"));
    CHECK(meta["version"] == kVersion);
    CHECK(meta["command"] == "spectrum");
    CHECK(meta["config"]["params"]["g_a"] == 4.0);

    // identical configuration, identical bytes
    RunConfig again = c;
    again.out_dir = scratch("spectrum_again").string();
    execute(Command::Spectrum, again, log);
    const fs::path dir2(again.out_dir);
    CHECK(slurp(dir2 / "spectrum.csv") == csv);
    CHECK(slurp(dir2 / "peaks.json") == slurp(dir / "peaks.json"));
    CHECK(slurp(dir2 / "plot.svg") == slurp(dir / "plot.svg"));
}

TEST_CASE("dressed, ledger and evolve commands") {
    RunConfig c = preset("fig2");
    c.params.g_m = 0.0;
    c.params.m_max = 1;
    c.out_dir = scratch("dressed").string();
    std::ostringstream log;
    execute(Command::Dressed, c, log);
    const auto d = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "dressed.json"));
    std::vector<double> levels = d["levels"];
    CHECK(std::find(levels.begin(), levels.end(), 4.0) != levels.end());
    CHECK(std::find(levels.begin(), levels.end(), -4.0) != levels.end());

    RunConfig l = preset("fig2");
    l.out_dir = scratch("ledger").string();
    execute(Command::Ledger, l, log);
    const auto led = nlohmann::json::parse(slurp(fs::path(l.out_dir) / "ledger.json"));
    CHECK(std::abs(led["final"]["detected_photon"].get<double>() - 1.0) < 1e-4);
    CHECK(led["series"].size() <= 401u);

    RunConfig e = preset("fig2");
    e.evolve_points = 11;
    e.out_dir = scratch("evolve").string();
    execute(Command::Evolve, e, log);
    const std::string amps = slurp(fs::path(e.out_dir) / "amplitudes.csv");
    CHECK(amps.rfind("t,branch,m,re,im,abs2\n", 0) == 0);
    CHECK(std::count(amps.begin(), amps.end(), '\n') == 1 + 11 * 22);
    CHECK(amps.find("0,atom_excited,0,1,0,1\n") != std::string::npos);
}

TEST_CASE("exit codes") {
    std::ostringstream log, err;
    RunConfig bad = preset("fig2");
    bad.params.kappa = -1.0;
    bad.out_dir = scratch("bad").string();
    CHECK(run(Command::Spectrum, bad, log, err) == 2);
    CHECK(err.str().find("config_error") != std::string::npos);

    const fs::path blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    RunConfig unwritable = preset("fig4");
    unwritable.out_dir = (blocker / "sub").string();
    std::ostringstream err2;
    CHECK(run(Command::Dressed, unwritable, log, err2) == 1);
    CHECK_FALSE(err2.str().empty());
}
