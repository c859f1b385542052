#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinctl/controllability.hpp"
#include "spinctl/filtering.hpp"
#include "spinctl/optimizer.hpp"
#include "spinctl/sensitivity.hpp"

namespace spinctl::cli {

using nlohmann::json;

// Configuration problems exit with code 2; numerical failures with 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FilterConfig {
    FilterSpec::Kind kind = FilterSpec::Kind::IdealLowPass;
    // knob values: cutoffs (low-pass) or FWHMs (Gaussian), one filter per value
    std::vector<double> knobs;

    FilterSpec spec_for(double knob) const {
        return kind == FilterSpec::Kind::IdealLowPass ? FilterSpec::lowpass(knob)
                                                      : FilterSpec::gaussian_fwhm(knob);
    }
    const char* knob_name() const {
        return kind == FilterSpec::Kind::IdealLowPass ? "cutoff" : "fwhm";
    }
};

struct SpectrumConfig {
    double omega_max = 30.0;
    int n_points = 600;
};

// Parsed + validated run configuration. `document` carries the resolved
// form (seed overrides applied, pulses_file inlined) that reports embed.
struct RunConfig {
    std::uint64_t seed = 0;
    ChainSpec chain;
    GateTarget target;
    bool has_target = false;

    ControlMode mode = ControlMode::AlternatingXY;
    int n_pulses = 0;
    double pulse_duration = 0.0;
    bool has_control = false;

    std::optional<std::vector<double>> amplitudes;
    std::optional<std::string> pulses_file;

    OptimizerConfig optimizer;
    bool has_optimizer = false;

    NoiseModel noise;
    std::optional<std::vector<double>> delta_grid;
    bool has_noise = false;

    FilterConfig filter;
    bool has_filter = false;

    SpectrumConfig spectrum;
    bool has_spectrum = false;

    std::vector<double> tf_grid;
    bool has_scan = false;

    int iterate_rounds = 1;
    bool has_iterate = false;

    ControlSet lie_controls = ControlSet::XY;
    bool has_lie = false;

    std::string output_dir = ".";

    json document;

    // Control shape + amplitudes as a ControlSequence. Requires the control
    // section (inline or from pulses_file); amplitudes default to zero when
    // absent and need_amplitudes is false.
    ControlSequence sequence(bool need_amplitudes) const;
};

// Strict parse: schema_version checked, unknown keys rejected everywhere.
// seed_override / out_override come from the command line.
RunConfig load_run_config(const std::string& path,
                          const std::optional<std::uint64_t>& seed_override,
                          const std::optional<std::string>& out_override);

RunConfig parse_run_config(json j, const std::optional<std::uint64_t>& seed_override,
                           const std::optional<std::string>& out_override,
                           const std::string& config_dir);

json sequence_to_json(const ControlSequence& seq);
ControlSequence sequence_from_json(const json& j);

} // namespace spinctl::cli
