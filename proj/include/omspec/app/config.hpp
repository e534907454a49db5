// config.hpp - resolved run configuration, built-in presets and JSON ingestion

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "omspec/errors.hpp"
#include "omspec/spectrum.hpp"

namespace omspec::app {

/// Raised for malformed configuration; the CLI maps it to exit code 2.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config_error", what) {}
};

struct GridSpec {
    double delta_min{-8.0};
    double delta_max{8.0};
    int delta_points{801};
};

struct RunConfig {
    std::optional<std::string> preset;
    SystemParams params;
    double filter_gamma{0.1};
    GridSpec grid;
    std::vector<double> times{1.0, 2.0, 4.0, 7.0, 10.0, 20.0};
    BasisIndex initial{Branch::AtomExcited, 0};
    bool thermal{false};
    SpectrumMode mode{SpectrumMode::Incoherent};
    Backend backend{Backend::ClosedForm};
    SpectrumOptions options;
    double peak_prominence{0.05};
    double ledger_tmax{120.0};
    int ledger_steps{4000};
    double evolve_tmax{20.0};
    int evolve_points{201};
    std::string out_dir{"."};
    bool svg{false};

    FilterSpec filter() const;
};

struct PresetInfo {
    std::string name;
    std::string description;
};

std::vector<PresetInfo> list_presets();

/// Throws ConfigError for unknown names.
RunConfig preset(const std::string& name);

/// Applies a JSON document on top of `base`. A "preset" key is applied first,
/// then every other key overrides it. Unknown keys are rejected.
RunConfig apply_json(RunConfig base, const nlohmann::json& doc);

RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Full resolved configuration, as written to meta.json.
nlohmann::ordered_json to_json(const RunConfig& config);

/// Checks grids, times and parameters; throws ConfigError.
void check(const RunConfig& config);

SpectrumMode parse_mode(const std::string& s);
Backend parse_backend(const std::string& s);

}  // namespace omspec::app
